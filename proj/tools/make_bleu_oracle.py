#!/usr/bin/env python3
"""Regenerate the pinned BLEU oracle fixtures under tests/data/bleu_oracle/.

Twenty deterministic corpora (up to 50 sentences, vocabulary up to 20 tokens,
sentence lengths 1..15) are scored two independent ways: by the Moses
multi-bleu.perl script (pass its path via --multi-bleu) and by the plain
reimplementation below. Both must agree before anything is written. The
committed expected.tsv pins the script's printed output (2 decimals) plus the
full-precision values.

Usage:
    python3 tools/make_bleu_oracle.py --multi-bleu /path/to/multi-bleu.perl
"""

import argparse
import math
import random
import re
import subprocess
import sys
from collections import Counter
from pathlib import Path

ORDERS = 4


def reference_bleu(hyps, refs, lowercase=False):
    """Corpus BLEU with multi-bleu semantics: corpus-summed clipped counts,
    no smoothing, zero on any zero precision."""
    correct = [0] * ORDERS
    total = [0] * ORDERS
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hyps, refs):
        hw = hyp.lower().split() if lowercase else hyp.split()
        rw = ref.lower().split() if lowercase else ref.split()
        hyp_len += len(hw)
        ref_len += len(rw)
        for n in range(1, ORDERS + 1):
            hyp_counts = Counter(tuple(hw[i:i + n]) for i in range(len(hw) - n + 1))
            ref_counts = Counter(tuple(rw[i:i + n]) for i in range(len(rw) - n + 1))
            for gram, count in hyp_counts.items():
                total[n - 1] += count
                correct[n - 1] += min(count, ref_counts.get(gram, 0))
    precisions = [correct[i] / total[i] if total[i] > 0 else 0.0 for i in range(ORDERS)]
    if hyp_len == 0:
        return {"bleu": 0.0, "precisions": precisions, "bp": 0.0,
                "hyp_len": hyp_len, "ref_len": ref_len}
    bp = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    if min(precisions) <= 0.0:
        bleu = 0.0
    else:
        bleu = 100.0 * bp * math.exp(sum(math.log(p) for p in precisions) / ORDERS)
    return {"bleu": bleu, "precisions": precisions, "bp": bp,
            "hyp_len": hyp_len, "ref_len": ref_len}


def run_perl(script, ref_path, hyp_path):
    with open(hyp_path, "rb") as hyp:
        out = subprocess.run(["perl", str(script), str(ref_path)], stdin=hyp,
                             capture_output=True, check=False)
    line = out.stdout.decode()
    m = re.match(r"BLEU = ([0-9.]+), ([0-9.]+)/([0-9.]+)/([0-9.]+)/([0-9.]+) "
                 r"\(BP=([0-9.]+), ratio=([0-9.]+), hyp_len=(\d+), ref_len=(\d+)\)", line)
    if not m:
        raise RuntimeError(f"cannot parse multi-bleu output: {line!r}")
    return {"bleu": float(m.group(1)), "raw": line.strip()}


def vocab(size):
    return [f"v{chr(ord('a') + i)}" for i in range(size)]


def random_sentence(rng, words, lo=1, hi=15):
    return " ".join(rng.choice(words) for _ in range(rng.randint(lo, hi)))


def noisy_copy(rng, sentence, words, p_sub, p_del, p_ins):
    out = []
    for tok in sentence.split():
        if rng.random() < p_del:
            continue
        out.append(rng.choice(words) if rng.random() < p_sub else tok)
        if rng.random() < p_ins:
            out.append(rng.choice(words))
    if not out:
        out.append(rng.choice(words))
    return " ".join(out)


def build_corpora():
    rng = random.Random(20250810)
    corpora = []

    # identity
    words = vocab(12)
    refs = [random_sentence(rng, words) for _ in range(20)]
    corpora.append(("c00_identity", list(refs), refs))

    # disjoint vocabularies: zero precision everywhere
    refs = [random_sentence(rng, vocab(10)) for _ in range(15)]
    hyps = [random_sentence(rng, [f"x{c}" for c in "abcdefgh"]) for _ in range(15)]
    corpora.append(("c01_disjoint", hyps, refs))

    # light noise
    words = vocab(15)
    refs = [random_sentence(rng, words, 4, 15) for _ in range(30)]
    hyps = [noisy_copy(rng, r, words, 0.2, 0.05, 0.05) for r in refs]
    corpora.append(("c02_light_noise", hyps, refs))

    # short hypotheses: no 4-grams at all, strong brevity penalty
    words = vocab(10)
    refs = [random_sentence(rng, words, 6, 15) for _ in range(12)]
    hyps = [" ".join(r.split()[:3]) for r in refs]
    corpora.append(("c03_short_hyps", hyps, refs))

    # single one-token sentence
    corpora.append(("c04_one_token", ["va"], ["va"]))

    # single two-token sentence
    corpora.append(("c05_two_tokens", ["va vb"], ["va vb"]))

    # hypotheses padded longer than references
    words = vocab(8)
    refs = [random_sentence(rng, words, 3, 10) for _ in range(10)]
    hyps = [r + " " + random_sentence(rng, words, 1, 4) for r in refs]
    corpora.append(("c06_long_hyps", hyps, refs))

    # hypotheses with deletions only
    words = vocab(12)
    refs = [random_sentence(rng, words, 5, 15) for _ in range(18)]
    hyps = [noisy_copy(rng, r, words, 0.0, 0.3, 0.0) for r in refs]
    corpora.append(("c07_deletions", hyps, refs))

    # two-word vocabulary: heavy clipping
    words = vocab(2)
    refs = [random_sentence(rng, words, 1, 15) for _ in range(25)]
    hyps = [random_sentence(rng, words, 1, 15) for _ in range(25)]
    corpora.append(("c08_tiny_vocab", hyps, refs))

    # replacement-heavy
    words = vocab(20)
    refs = [random_sentence(rng, words, 4, 15) for _ in range(20)]
    hyps = [noisy_copy(rng, r, words, 0.6, 0.1, 0.1) for r in refs]
    corpora.append(("c09_heavy_noise", hyps, refs))

    for i in range(10, 20):
        n = rng.randint(1, 50)
        words = vocab(rng.randint(3, 20))
        refs = [random_sentence(rng, words) for _ in range(n)]
        mode = rng.random()
        if mode < 0.3:
            hyps = [random_sentence(rng, words) for _ in range(n)]
        else:
            hyps = [noisy_copy(rng, r, words, rng.uniform(0.05, 0.5),
                               rng.uniform(0.0, 0.2), rng.uniform(0.0, 0.2)) for r in refs]
        corpora.append((f"c{i:02d}_random", hyps, refs))
    return corpora


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--multi-bleu", required=True,
                        help="path to the Moses multi-bleu.perl script")
    parser.add_argument("--out", default=None,
                        help="output directory (default tests/data/bleu_oracle)")
    args = parser.parse_args()

    root = Path(__file__).resolve().parent.parent
    out_dir = Path(args.out) if args.out else root / "tests" / "data" / "bleu_oracle"
    out_dir.mkdir(parents=True, exist_ok=True)

    rows = []
    for name, hyps, refs in build_corpora():
        hyp_path = out_dir / f"{name}.hyp"
        ref_path = out_dir / f"{name}.ref"
        hyp_path.write_text("\n".join(hyps) + "\n", encoding="utf-8")
        ref_path.write_text("\n".join(refs) + "\n", encoding="utf-8")

        mine = reference_bleu(hyps, refs)
        perl = run_perl(args.multi_bleu, ref_path, hyp_path)
        if abs(mine["bleu"] - perl["bleu"]) > 0.005 + 1e-9:
            sys.exit(f"{name}: python {mine['bleu']:.6f} vs perl {perl['bleu']:.2f}; "
                     "the two oracle routes disagree, refusing to pin")
        rows.append((name, f"{perl['bleu']:.2f}", repr(mine["bleu"]),
                     *[repr(p) for p in mine["precisions"]], repr(mine["bp"]),
                     str(mine["hyp_len"]), str(mine["ref_len"]), perl["raw"]))
        print(f"{name}: perl={perl['bleu']:.2f} python={mine['bleu']:.6f}")

    header = "name\tbleu_pinned\tbleu_exact\tp1\tp2\tp3\tp4\tbp\thyp_len\tref_len\tperl_line\n"
    with open(out_dir / "expected.tsv", "w", encoding="utf-8") as f:
        f.write(header)
        for row in rows:
            f.write("\t".join(row) + "\n")
    print(f"wrote {out_dir / 'expected.tsv'} ({len(rows)} corpora)")


if __name__ == "__main__":
    main()
