#!/usr/bin/env python3
"""Reference implementation of the seeded exemplar shuffle.

Independent of the C++ code; used to pin golden expectations for
sample_exemplars. The contract:

  1. pool = dataset records in file order, minus the excluded id
  2. SplitMix64 stream seeded with `seed`:
       state += 0x9E3779B97F4A7C15
       z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
       z = (z ^ z>>27) * 0x94D049BB133111EB; output = z ^ z>>31
  3. Fisher-Yates: for e = len(pool)-1 .. 1: j = next() % (e+1); swap e,j
  4. result = first k of the shuffled pool

Usage: tools/reference_shuffle.py <dataset.jsonl> <k> <seed> [exclude-id]
"""

import json
import sys

MASK = (1 << 64) - 1


def splitmix64(seed):
    state = seed

    def next_value():
        nonlocal state
        state = (state + 0x9E3779B97F4A7C15) & MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return (z ^ (z >> 31)) & MASK

    return next_value


def sample(ids, k, seed, exclude=None):
    pool = [i for i in ids if i != exclude]
    if k > len(pool):
        raise SystemExit(f"k={k} exceeds pool of {len(pool)}")
    nxt = splitmix64(seed)
    for e in range(len(pool) - 1, 0, -1):
        j = nxt() % (e + 1)
        pool[e], pool[j] = pool[j], pool[e]
    return pool[:k]


def main(argv):
    if len(argv) < 4:
        print(__doc__)
        return 1
    path, k, seed = argv[1], int(argv[2]), int(argv[3])
    exclude = argv[4] if len(argv) > 4 else None
    with open(path, encoding="utf-8") as f:
        ids = [json.loads(line)["id"] for line in f if line.strip()]
    for pid in sample(ids, k, seed, exclude):
        print(pid)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
