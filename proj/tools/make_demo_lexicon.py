#!/usr/bin/env python3
# Copyright 2026 The Synmark Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the small demo lexicon under data/demo.

Each synonym group shares one vector (plus a little noise); every vector is
2u + e for a shared direction u and a per-group direction e, so nearby
content words look related. Deterministic for a given seed.
"""

import argparse
import pathlib
import random

GROUPS = [
    "big large huge vast",
    "small little tiny minor",
    "quick fast rapid swift",
    "happy glad cheerful joyful",
    "house home dwelling residence",
    "road street path avenue",
    "begin start commence initiate",
    "answer reply response retort",
    "city town metropolis municipality",
    "picture image photo illustration",
    "buy purchase acquire obtain",
    "show display exhibit reveal",
    "help aid assist support",
    "idea notion concept thought",
    "quiet calm silent peaceful",
    "old ancient aged elderly",
    "smart clever bright intelligent",
    "people folks persons individuals",
    "walk stroll wander roam",
    "river stream creek brook",
]

PLAIN = """morning evening garden market children teacher water bread window
story music friend letter table mountain forest winter summer school office
light paper voice found saw made took gave told kept left brought carried
bridge doctor train station night day week year family dog cat""".split()


def unit(rng, dim):
    v = [rng.gauss(0, 1) for _ in range(dim)]
    n = sum(x * x for x in v) ** 0.5
    return [x / n for x in v]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/demo")
    parser.add_argument("--dim", type=int, default=16)
    parser.add_argument("--seed", type=int, default=2026)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    common = unit(rng, args.dim)

    vectors = {}
    synonyms = []
    for group in GROUPS:
        words = group.split()
        base = unit(rng, args.dim)
        for w in words:
            noise = [rng.gauss(0, 0.02) for _ in range(args.dim)]
            vectors[w] = [2 * c + b + n for c, b, n in zip(common, base, noise)]
            synonyms.append(" ".join([w] + [o for o in words if o != w]))
    for w in PLAIN:
        vectors[w] = [2 * c + b for c, b in zip(common, unit(rng, args.dim))]

    with open(out / "vectors.txt", "w", encoding="utf-8") as f:
        f.write(f"{len(vectors)} {args.dim}\n")
        for w, v in vectors.items():
            f.write(w + " " + " ".join(f"{x:.6f}" for x in v) + "\n")
    with open(out / "synonyms.txt", "w", encoding="utf-8") as f:
        f.write("\n".join(synonyms) + "\n")


if __name__ == "__main__":
    main()
