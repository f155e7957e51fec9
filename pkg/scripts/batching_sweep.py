"""Throughput of the CRF tagger across batch sizes and worker counts."""

import argparse
import logging

from payner.bench import measure_throughput
from payner.corpus import GeneratorConfig, generate_corpus
from payner.crf import TrainConfig, load_model, save_model, train
from payner.taggers import CrfTagger


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--model", help="trained model file; trains a quick one if absent")
    ap.add_argument("--messages", type=int, default=1000)
    ap.add_argument("--duration", type=float, default=5.0)
    ap.add_argument("--batches", default="1,2,4,8,16,32")
    ap.add_argument("--workers", default="1,2")
    ap.add_argument("--save-model", help="store the quick model here for reuse")
    args = ap.parse_args()
    logging.basicConfig(level=logging.WARNING)

    if args.model:
        model = load_model(args.model)
    else:
        model = train(generate_corpus(GeneratorConfig(count=1000, seed=42)), None, None, TrainConfig(seed=42))
        if args.save_model:
            save_model(model, args.save_model)
    msgs = [m.message for m in generate_corpus(GeneratorConfig(count=args.messages, seed=7))]
    tagger = CrfTagger(model)
    tagger.tag_batch(msgs[:16])

    print(f"{'batch':>6}{'workers':>8}{'msg/s':>10}{'p50 ms':>10}{'p95 ms':>10}")
    for w in map(int, args.workers.split(",")):
        for b in map(int, args.batches.split(",")):
            r = measure_throughput(tagger, msgs, batch_size=b, workers=w, duration=args.duration)
            print(f"{b:>6}{w:>8}{r.throughput_msgs_per_s:>10.1f}{r.latency_p50_ms:>10.2f}{r.latency_p95_ms:>10.2f}")


if __name__ == "__main__":
    main()
