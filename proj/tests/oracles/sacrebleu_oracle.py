#!/usr/bin/env python3
# Copyright 2026 The SITK Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Corpus BLEU / chrF for the fixed pairs in tests/quality_test.cc.

Run with sacrebleu 2.x. BLEU uses the 'char' tokenizer with whitespace
removed first (what ja_char does); chrF uses the defaults.
"""
from sacrebleu.metrics import BLEU, CHRF

PAIRS = [
    ("abcd", "abce"),
    ("私は駅まで歩いた", "私は駅へ歩いた"),
    ("雨の中を駅まで歩いた", "雨の中、私たちは駅まで歩いた"),
    ("バスが来なかったので", "バスが全然来なかったから"),
    ("今日は晴れです", "今日は晴れです"),
    ("彼は本を読んだ", "彼女は新聞を読んでいた"),
    ("the cat sat on the mat", "the cat is on the mat"),
    ("会議は午後三時に始まります", "会議は三時から始まります"),
    ("それは重要な問題です", "これは大事な問題だ"),
    ("手紙を自宅から受け取った", "自宅から手紙を受け取った"),
    ("a", "b"),
    ("東京 大阪 京都", "東京、大阪、京都"),
    ("ありがとうございます", "どうもありがとう"),
    ("研究者たちは新しい方法を提案した", "研究者は新たな手法を提案しました"),
    ("x y z", "x y z w"),
    ("日本語の文章を翻訳する", "日本語の文を訳す"),
    ("データが足りない", "データ不足です"),
    ("その結果、性能が向上した", "結果として性能は上がった"),
    ("しかし問題が残る", "しかし課題は残っている"),
    ("同時通訳は難しい", "同時通訳はとても難しい"),
    ("はい", "いいえ"),
    ("長い文は短く区切る", "長い文を短く区切って訳す"),
    ("モデルを訓練した", "モデルの訓練を行った"),
    ("彼らは家に帰った", "彼らは帰宅した"),
    ("最後の例です", "これが最後の例です"),
]


def strip(s):
    return "".join(s.split())


def main():
    bleu = BLEU(tokenize="char")
    chrf = CHRF()
    hyps = [h for h, _ in PAIRS]
    refs = [r for _, r in PAIRS]
    print("// per pair: bleu, chrf")
    for h, r in PAIRS:
        b = bleu.corpus_score([strip(h)], [[strip(r)]]).score
        c = chrf.corpus_score([h], [[r]]).score
        print("    {%r, %r, %.17g, %.17g}," % (h, r, b, c))
    b = bleu.corpus_score([strip(h) for h in hyps], [[strip(r) for r in refs]]).score
    c = chrf.corpus_score(hyps, [refs]).score
    print("// corpus: %.17g %.17g" % (b, c))
    print("// signature:", bleu.get_signature(), chrf.get_signature())


if __name__ == "__main__":
    main()
