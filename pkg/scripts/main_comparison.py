"""CRF versus rule baseline on the seeded 1000/200/200 synthetic split.

Prints per-type and micro scores, the paired-bootstrap p-value, model size
and median latency for both systems. ``--json`` writes everything to a file.
"""

import argparse
import json
import logging
import time

from payner.bench import measure_latency
from payner.corpus import GeneratorConfig, generate_corpus, split_corpus
from payner.crf import TrainConfig, model_size_bytes, train
from payner.evaluation import evaluate, paired_bootstrap
from payner.schema import EntityType
from payner.taggers import CrfTagger, RuleTagger, predict


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--iters", type=int, default=10_000, help="bootstrap resamples")
    ap.add_argument("--json", help="write results here")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    corpus = generate_corpus(GeneratorConfig(count=1400, seed=args.seed))
    train_part, dev_part, test_part = split_corpus(corpus, (5 / 7, 1 / 7, 1 / 7), seed=args.seed)
    t0 = time.perf_counter()
    model = train(train_part, dev_part, None, TrainConfig(seed=args.seed))
    train_s = time.perf_counter() - t0

    systems = {"crf": CrfTagger(model), "rules": RuleTagger()}
    preds = {name: predict(t, test_part) for name, t in systems.items()}
    reports = {name: evaluate(test_part, p) for name, p in preds.items()}
    latency = {name: measure_latency(t, [m.message for m in test_part]) for name, t in systems.items()}
    p = paired_bootstrap(test_part, preds["crf"], preds["rules"], args.iters, args.seed)

    header = f"{'system':<8}" + "".join(f"{t.value:>15}" for t in EntityType) + f"{'micro':>9}{'p50 ms':>9}"
    print(header)
    for name, rep in reports.items():
        row = "".join(f"{rep.per_type[t].f1:>15.4f}" for t in EntityType)
        print(f"{name:<8}{row}{rep.f1:>9.4f}{latency[name].latency_p50_ms:>9.2f}")
    print(f"\npaired bootstrap p (rules >= crf) = {p:.4g} over {args.iters} resamples")
    print(f"CRF: {len(model.feature_index)} features, {model_size_bytes(model) / 1024:.0f} KiB, trained in {train_s:.1f}s")
    print(f"CRF error breakdown: {reports['crf'].errors}")
    print(f"rule error breakdown: {reports['rules'].errors}")

    if args.json:
        out = {
            "reports": {k: r.to_dict() for k, r in reports.items()},
            "latency": {k: r.to_dict() for k, r in latency.items()},
            "bootstrap_p": p,
            "train_seconds": train_s,
            "features": len(model.feature_index),
        }
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(out, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
