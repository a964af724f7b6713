#!/usr/bin/env python3
# Copyright 2026 The boundmf Authors. All Rights Reserved.
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

"""Regenerates the CSV fixtures in this directory (deterministic)."""

import random
from pathlib import Path

HERE = Path(__file__).resolve().parent


def write_claims(path, cells):
    """cells: list of (user, discipline, submitted, approved)."""
    lines = ["jobId,disciplineId,taskId,userId,claimId,approved"]
    claim = 1
    for user, disc, submitted, approved in cells:
        for i in range(submitted):
            job = 500 + (claim % 7)
            task = 9000 + claim
            ok = "true" if i < approved else "false"
            lines.append(f"{job},{disc},{task},{user},{claim},{ok}")
            claim += 1
    path.write_text("\n".join(lines) + "\n")


def claims_fixture():
    # Core: users 1..20 in disciplines 100..103; users 1..8 each skip one.
    # 104 has 8 users, 105 only low-support entries, users 21..25 only keep
    # one entry once 104 goes, and user 26 props up 106 for the first pass.
    cells = []
    for u in range(1, 21):
        for d in range(100, 104):
            if u <= 8 and d == 100 + u % 4:
                continue
            cells.append((u, d, 12, (u * 7 + d) % 13))
    for u in list(range(21, 27)) + [1, 2]:
        cells.append((u, 104, 12, u % 12))
    for u in range(1, 16):
        cells.append((u, 105, 5, u % 5))
    for u in range(21, 27):
        cells.append((u, 100, 11, 3))
    for u in list(range(12, 21)) + [26]:
        cells.append((u, 106, 10, u % 10))
    write_claims(HERE / "claims_fixture.csv", cells)


def claims_small():
    cells = [(u, d, 10, (u + d) % 11) for u in (1, 2, 3) for d in (7, 8)]
    write_claims(HERE / "claims_3x2.csv", cells)
    text = (HERE / "claims_3x2.csv").read_text().splitlines()
    # Line 4 of the file (third record) gets an unparseable boolean.
    fields = text[3].split(",")
    fields[5] = "maybe"
    text[3] = ",".join(fields)
    (HERE / "claims_bad_bool.csv").write_text("\n".join(text) + "\n")


def ctr_fixture():
    # Subsample-shaped CTR log: 120 ads x 18 categories, skewed coverage.
    rng = random.Random(20161)
    lines = ["adId,categoryId,displays,clicks"]
    for ad in range(1, 121):
        reach = rng.choice([1, 2, 3, 4, 5, 6, 8, 10, 12, 14])
        cats = rng.sample(range(1, 19), reach)
        for c in cats:
            # Some pairs arrive split over two log rows.
            parts = 2 if rng.random() < 0.2 else 1
            for _ in range(parts):
                displays = rng.randint(1, 400)
                clicks = sum(rng.random() < 0.03 for _ in range(displays))
                lines.append(f"{1000 + ad},{c},{displays},{clicks}")
    (HERE / "ctr_fixture.csv").write_text("\n".join(lines) + "\n")


def views_fixture():
    rng = random.Random(7)
    lines = ["userId,itemId,views"]
    for u in range(1, 31):
        for i in rng.sample(range(1, 26), rng.randint(8, 20)):
            lines.append(f"{u},{i},{rng.randint(0, 40)}")
    (HERE / "views_fixture.csv").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    claims_fixture()
    claims_small()
    ctr_fixture()
    views_fixture()
