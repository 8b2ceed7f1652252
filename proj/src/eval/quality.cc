// Copyright 2026 The SITK Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sitk/quality.h"

#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "sitk/corpus_inl.h"
#include "sitk/io.h"
#include "sitk/text.h"

namespace sitk {
namespace {

using Counts = std::unordered_map<std::u32string, int64_t>;

void CheckCorpus(const std::vector<std::string> &hyps,
                 const std::vector<std::string> &refs) {
  if (hyps.size() != refs.size()) {
    throw DataError("hypotheses (" + std::to_string(hyps.size()) + ") and references (" +
                    std::to_string(refs.size()) + ") differ in length");
  }
  if (hyps.empty()) throw DataError("cannot score an empty corpus");
}

std::vector<std::u32string> BleuTokens(const std::string &line, BleuTokenize tok) {
  const std::u32string text = DecodeUtf8(line);
  if (tok == BleuTokenize::kWhitespace) return SplitUnicodeWhitespace(text);
  std::vector<std::u32string> out;
  for (char32_t c : text) {
    if (!IsUnicodeSpace(c)) out.emplace_back(1, c);
  }
  return out;
}

// Word n-grams joined with a separator that cannot occur inside a token.
Counts WordNgrams(const std::vector<std::u32string> &tokens, int n) {
  Counts counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::u32string key = tokens[i];
    for (int j = 1; j < n; ++j) {
      key += U' ';
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

Counts CharNgrams(const std::u32string &text, int n) {
  Counts counts;
  if (static_cast<int>(text.size()) < n) return counts;
  for (size_t i = 0; i + n <= text.size(); ++i) ++counts[text.substr(i, n)];
  return counts;
}

int64_t Clipped(const Counts &hyp, const Counts &ref) {
  int64_t match = 0;
  for (const auto &[gram, count] : hyp) {
    auto it = ref.find(gram);
    if (it != ref.end()) match += std::min(count, it->second);
  }
  return match;
}

int64_t Total(const Counts &c) {
  int64_t n = 0;
  for (const auto &[gram, count] : c) n += count;
  return n;
}

double FlooredLog(double x) { return x == 0.0 ? -9999999999.0 : std::log(x); }

}  // namespace

std::string_view BleuTokenizeName(BleuTokenize tok) {
  return tok == BleuTokenize::kJaChar ? "ja_char" : "whitespace";
}

BleuTokenize ParseBleuTokenize(std::string_view name) {
  if (name == "ja_char" || name == "char") return BleuTokenize::kJaChar;
  if (name == "whitespace" || name == "none") return BleuTokenize::kWhitespace;
  throw DataError("unknown BLEU tokenization \"" + std::string(name) + "\"");
}

BleuResult CorpusBleu(const std::vector<std::string> &hypotheses,
                      const std::vector<std::string> &references, BleuTokenize tokenize) {
  CheckCorpus(hypotheses, references);
  BleuResult r;
  for (size_t s = 0; s < hypotheses.size(); ++s) {
    const auto hyp = BleuTokens(hypotheses[s], tokenize);
    const auto ref = BleuTokens(references[s], tokenize);
    r.sys_len += static_cast<int64_t>(hyp.size());
    r.ref_len += static_cast<int64_t>(ref.size());
    for (int n = 1; n <= kBleuMaxOrder; ++n) {
      const Counts h = WordNgrams(hyp, n);
      r.total[n - 1] += Total(h);
      r.correct[n - 1] += Clipped(h, WordNgrams(ref, n));
    }
  }

  r.brevity_penalty = 1.0;
  if (r.sys_len < r.ref_len) {
    r.brevity_penalty =
        r.sys_len > 0 ? std::exp(1.0 - static_cast<double>(r.ref_len) / r.sys_len) : 0.0;
  }
  bool any_correct = false;
  for (int64_t c : r.correct) any_correct |= c > 0;
  if (!any_correct) {
    r.score = 0.0;
    return r;
  }
  double smooth = 1.0;
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    if (r.total[n] == 0) break;
    if (r.correct[n] == 0) {
      smooth *= 2;
      r.precisions[n] = 100.0 / (smooth * static_cast<double>(r.total[n]));
    } else {
      r.precisions[n] =
          100.0 * static_cast<double>(r.correct[n]) / static_cast<double>(r.total[n]);
    }
  }
  // exp(log(100)) is 100.00000000000004 in binary floating point.
  bool perfect = r.brevity_penalty == 1.0;
  for (int n = 0; n < kBleuMaxOrder; ++n) perfect &= r.correct[n] == r.total[n];
  if (perfect) {
    r.score = 100.0;
    return r;
  }
  double log_sum = 0;
  for (double p : r.precisions) log_sum += FlooredLog(p);
  r.score = r.brevity_penalty * std::exp(log_sum / kBleuMaxOrder);
  return r;
}

double CorpusChrf(const std::vector<std::string> &hypotheses,
                  const std::vector<std::string> &references) {
  CheckCorpus(hypotheses, references);
  std::array<int64_t, kChrfCharOrder> n_hyp{}, n_ref{}, n_match{};
  for (size_t s = 0; s < hypotheses.size(); ++s) {
    const std::u32string hyp = StripWhitespace(DecodeUtf8(hypotheses[s]));
    const std::u32string ref = StripWhitespace(DecodeUtf8(references[s]));
    for (int n = 1; n <= kChrfCharOrder; ++n) {
      const Counts h = CharNgrams(hyp, n), r = CharNgrams(ref, n);
      n_hyp[n - 1] += Total(h);
      n_ref[n - 1] += Total(r);
      n_match[n - 1] += Clipped(h, r);
    }
  }
  const double factor = kChrfBeta * kChrfBeta;
  double avg_prec = 0, avg_rec = 0;
  int effective = 0;
  for (int i = 0; i < kChrfCharOrder; ++i) {
    if (n_hyp[i] > 0 && n_ref[i] > 0) {
      avg_prec += static_cast<double>(n_match[i]) / static_cast<double>(n_hyp[i]);
      avg_rec += static_cast<double>(n_match[i]) / static_cast<double>(n_ref[i]);
      ++effective;
    }
  }
  if (effective == 0) return 0.0;
  avg_prec /= effective;
  avg_rec /= effective;
  if (avg_prec + avg_rec == 0) return 0.0;
  double score = (1 + factor) * avg_prec * avg_rec;
  score /= (factor * avg_prec) + avg_rec;
  return 100 * score;
}

std::string BleuSignature(BleuTokenize tokenize) {
  return "BLEU|nrefs:1|case:mixed|eff:no|tok:" + std::string(BleuTokenizeName(tokenize)) +
         "|ngram:4|smooth:exp";
}

std::string ChrfSignature() { return "chrF2|nrefs:1|case:mixed|eff:yes|nc:6|nw:0|space:no"; }

QualityReport EvaluateQuality(const std::vector<std::string> &hypotheses,
                              const std::vector<std::string> &references,
                              BleuTokenize tokenize) {
  QualityReport q;
  q.bleu = CorpusBleu(hypotheses, references, tokenize).score;
  q.chrf = CorpusChrf(hypotheses, references);
  q.signature = BleuSignature(tokenize) + " " + ChrfSignature();
  return q;
}

void ExportNeuralScoring(const std::vector<std::string> &sources,
                         const std::vector<std::string> &hypotheses,
                         const std::vector<std::string> &references,
                         const std::filesystem::path &path, bool qe_only) {
  if (sources.size() != hypotheses.size()) {
    throw DataError("sources and hypotheses differ in length");
  }
  if (!qe_only && references.size() != hypotheses.size()) {
    throw DataError("references and hypotheses differ in length (use QE-only export "
                    "when there are no references)");
  }
  std::string out;
  for (size_t i = 0; i < sources.size(); ++i) {
    nlohmann::ordered_json j = {{"src", sources[i]}, {"mt", hypotheses[i]}};
    if (!qe_only) j["ref"] = references[i];
    out += j.dump() + "\n";
  }
  WriteFileAtomic(path, out);
}

std::vector<double> ImportNeuralScores(const std::filesystem::path &path) {
  std::ifstream in = OpenInput(path);
  std::vector<double> scores;
  ForEachJsonLine(in, path.string(), [&](int, const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("score") || !j.at("score").is_number()) {
      throw DataError("expected {\"score\": number}");
    }
    scores.push_back(j.at("score").get<double>());
  });
  return scores;
}

void SimilarityTable::AttachNeural(const std::string &row, const std::string &metric,
                                   const std::vector<double> &scores) {
  if (scores.empty()) throw DataError("no scores to attach for " + metric);
  double sum = 0;
  for (double s : scores) sum += s;
  for (auto &r : rows) {
    if (r.name == row) {
      r.neural[metric] = sum / static_cast<double>(scores.size());
      return;
    }
  }
  throw DataError("no similarity row named \"" + row + "\"");
}

namespace {

std::vector<std::string> NeuralColumns(const std::vector<SimilarityRow> &rows) {
  std::set<std::string> names;
  for (const auto &r : rows) {
    for (const auto &[metric, value] : r.neural) names.insert(metric);
  }
  return {names.begin(), names.end()};
}

std::string Fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

}  // namespace

std::string SimilarityTable::ToTsv() const {
  const auto neural = NeuralColumns(rows);
  std::string out = "variant\tbleu\tchrf";
  for (const auto &m : neural) out += "\t" + m;
  out += "\n";
  for (const auto &r : rows) {
    out += r.name + "\t" + FormatDouble(r.bleu) + "\t" + FormatDouble(r.chrf);
    for (const auto &m : neural) {
      auto it = r.neural.find(m);
      out += "\t" + (it == r.neural.end() ? std::string() : FormatDouble(it->second));
    }
    out += "\n";
  }
  return out;
}

std::string SimilarityTable::ToText() const {
  const auto neural = NeuralColumns(rows);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {"variant", "BLEU", "chrF"};
  header.insert(header.end(), neural.begin(), neural.end());
  cells.push_back(header);
  for (const auto &r : rows) {
    std::vector<std::string> line = {r.name, Fixed(r.bleu, 1), Fixed(r.chrf, 1)};
    for (const auto &m : neural) {
      auto it = r.neural.find(m);
      line.push_back(it == r.neural.end() ? "-" : Fixed(it->second, 3));
    }
    cells.push_back(line);
  }
  std::vector<size_t> width(header.size(), 0);
  for (const auto &line : cells) {
    for (size_t c = 0; c < line.size(); ++c) {
      width[c] = std::max(width[c], DecodeUtf8(line[c]).size());
    }
  }
  std::string out;
  for (const auto &line : cells) {
    std::string text;
    for (size_t c = 0; c < line.size(); ++c) {
      const size_t pad = width[c] - DecodeUtf8(line[c]).size();
      if (c == 0) {
        text += line[c] + std::string(pad, ' ');
      } else {
        text += "  " + std::string(pad, ' ') + line[c];
      }
    }
    out += text + "\n";
  }
  out += "# " + signature + "\n";
  return out;
}

SimilarityTable BuildSimilarityTable(const Corpus &base, const std::vector<Corpus> &variants,
                                     BleuTokenize tokenize) {
  std::map<std::string, const SegmentPair *> base_by_id;
  for (const auto &p : base.pairs) {
    if (!p.target_text) throw DataError("base pair " + p.id + " has no target_text");
    base_by_id[p.id] = &p;
  }
  SimilarityTable table;
  table.signature = BleuSignature(tokenize) + " " + ChrfSignature();
  for (const auto &v : variants) {
    if (v.pairs.size() != base.pairs.size()) {
      throw DataError("variant " + v.name + " has " + std::to_string(v.pairs.size()) +
                      " pairs, base has " + std::to_string(base.pairs.size()));
    }
    std::vector<std::string> hyps, refs;
    std::set<std::string> seen;
    for (const auto &p : v.pairs) {
      auto it = base_by_id.find(p.id);
      if (it == base_by_id.end() || !seen.insert(p.id).second) {
        throw DataError("variant " + v.name + ": id " + p.id + " does not match the base");
      }
      if (!p.target_text) throw DataError("variant " + v.name + " pair " + p.id + " has no target_text");
      hyps.push_back(*p.target_text);
      refs.push_back(*it->second->target_text);
    }
    SimilarityRow row;
    row.name = v.name;
    row.bleu = CorpusBleu(hyps, refs, tokenize).score;
    row.chrf = CorpusChrf(hyps, refs);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace sitk
