#!/usr/bin/env python3
"""Write a small MNIST subset as gzipped IDX files.

Reads the per-digit JSON files shipped in the `mnist` npm package
(src/digits/<d>.json, {"data": [...]} with 784 floats per image, row-major).
The first TRAIN images of every digit go to the training set and the next
TEST to the test set, interleaved by digit.
"""
import argparse
import gzip
import json
import struct
from pathlib import Path

PIXELS = 28 * 28


def load_digit(path):
    data = json.loads(path.read_text())["data"]
    return [data[i:i + PIXELS] for i in range(0, len(data), PIXELS)]


def write_images(path, images):
    with gzip.GzipFile(path, "wb", mtime=0) as f:
        f.write(struct.pack(">IIII", 0x803, len(images), 28, 28))
        for img in images:
            f.write(bytes(min(255, max(0, round(v * 255))) for v in img))


def write_labels(path, labels):
    with gzip.GzipFile(path, "wb", mtime=0) as f:
        f.write(struct.pack(">II", 0x801, len(labels)))
        f.write(bytes(labels))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("digits_dir", type=Path)
    ap.add_argument("out_dir", type=Path)
    ap.add_argument("--train", type=int, default=200)
    ap.add_argument("--test", type=int, default=50)
    args = ap.parse_args()

    per_digit = [load_digit(args.digits_dir / f"{d}.json") for d in range(10)]
    sets = {"train": [], "test": []}
    for i in range(args.train + args.test):
        name = "train" if i < args.train else "test"
        for d in range(10):
            sets[name].append((per_digit[d][i], d))

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name, items in sets.items():
        write_images(args.out_dir / f"{name}-images-idx3-ubyte.gz", [img for img, _ in items])
        write_labels(args.out_dir / f"{name}-labels-idx1-ubyte.gz", [d for _, d in items])
        print(f"{name}: {len(items)} images")


if __name__ == "__main__":
    main()
