"""Train on one format, test on every format; then leave-one-format-out.

The diagonal is the same-format score; off-diagonal cells show how far a
model transfers to layouts it never saw.
"""

import argparse
import logging

from payner.corpus import GeneratorConfig, generate_corpus
from payner.crf import TrainConfig
from payner.evaluation import cross_format_eval
from payner.schema import MessageFormat


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--max-iter", type=int, default=200)
    ap.add_argument("--json", help="write the matrix here")
    args = ap.parse_args()
    logging.basicConfig(level=logging.WARNING)

    fmts = list(MessageFormat)
    corpus = generate_corpus(GeneratorConfig(count=args.count, seed=args.seed))
    plan = [((a,), b) for a in fmts for b in fmts]
    plan += [(tuple(f for f in fmts if f is not b), b) for b in fmts]
    matrix = cross_format_eval(corpus, plan, TrainConfig(max_iterations=args.max_iter, seed=args.seed), seed=args.seed)

    print("train \\ test".ljust(14) + "".join(f"{b.value:>9}" for b in fmts))
    for a in fmts:
        print(a.value.ljust(14) + "".join(f"{matrix[(a,), b]:>9.4f}" for b in fmts))
    print("all but test".ljust(14) + "".join(f"{matrix[tuple(f for f in fmts if f is not b), b]:>9.4f}" for b in fmts))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(matrix.to_json() + "\n")


if __name__ == "__main__":
    main()
