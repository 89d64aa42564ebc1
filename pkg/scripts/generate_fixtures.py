"""Generate the committed test fixture (synthetic 15-dataset catalog, three
stakeholder profiles) and freeze the golden rank/evaluate outputs from the
brute-force reference implementation.

Deterministic: re-running produces identical bytes. The goldens are written
from tests/reference_impl.py only, never from the package under test.

    python scripts/generate_fixtures.py
"""

from __future__ import annotations

import json
import math
import random
import sys
from datetime import date, timedelta
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import reference_impl as ref  # noqa: E402

DATA_DIR = ROOT / "tests" / "data"
SEED = 20230131
AS_OF = "2023-01-31"
K = 5

NAMES = [
    "Administrative Boundaries",
    "Road Network",
    "Hydrography",
    "Land Parcels",
    "Elevation Contours",
    "Orthophoto Index",
    "Postal Addresses",
    "Protected Sites",
    "Building Footprints",
    "Land Cover",
    "Geodetic Control Points",
    "Place Names Gazetteer",
    "Utility Easements",
    "Coastal Erosion Survey",
    "Historic Map Archive",
]

PROFILE_WEIGHTS = {
    "sh1": {"utility": 8, "creation_date": 10, "n_objects": 8, "usage": 5},
    "sh2": {"utility": 0, "creation_date": 0, "n_objects": 0, "usage": 0},
    "sh3": {"utility": 7, "creation_date": 9, "n_objects": 9, "usage": 4},
}


def month_range(first: str, last: str) -> list[str]:
    y, m = int(first[:4]), int(first[5:7])
    ly, lm = int(last[:4]), int(last[5:7])
    out = []
    while (y, m) <= (ly, lm):
        out.append(f"{y:04d}-{m:02d}")
        m += 1
        if m == 13:
            y, m = y + 1, 1
    return out


def build_records(rng: random.Random) -> list[dict]:
    months = month_range("2017-01", "2023-01")
    records = []
    for index, name in enumerate(NAMES, start=1):
        created = date(2015, 1, 1) + timedelta(days=rng.randrange(0, 8 * 365))
        scale = rng.choice([100, 5_000, 80_000, 1_500_000])
        n_objects = rng.randrange(scale // 2, scale * 2)
        if index == 13:
            usage = []  # one never-used dataset keeps the empty-series path hot
        else:
            # wide spread of presence rates so total and average usage
            # induce genuinely different orderings
            keep = rng.uniform(0.15, 0.95)
            peak = rng.choice([15, 60, 400, 900])
            usage = [
                [month, rng.randrange(0, peak)] for month in months if rng.random() < keep
            ]
        sh1_utility = rng.randrange(20, 101)
        experts = [sh1_utility] + [rng.randrange(10, 101) for _ in range(3)]
        avg_utility = round(sum(experts) / len(experts), 2)
        records.append(
            {
                "id": f"ds-{index:02d}",
                "name": name,
                "creation_date": created.isoformat(),
                "n_spatial_objects": n_objects,
                "usage": usage,
                "utilities": {"sh1": sh1_utility, "avg": avg_utility},
            }
        )
    return records


def perturb(order: list[str], swaps: int, moves: int, rng: random.Random) -> list[str]:
    """Adjacent swaps plus a few long-range relocations."""
    out = list(order)
    for _ in range(swaps):
        i = rng.randrange(len(out) - 1)
        out[i], out[i + 1] = out[i + 1], out[i]
    for _ in range(moves):
        item = out.pop(rng.randrange(len(out)))
        out.insert(rng.randrange(len(out) + 1), item)
    return out


def boundary_safe(value: float, decimals: int) -> bool:
    scaled = value * 10**decimals
    return abs(scaled - math.floor(scaled) - 0.5) > 1e-5


def check_boundaries(rows: list[dict], rankings: list[list[tuple[str, float]]]) -> None:
    for row in rows:
        for key in ("ndcg", "ndcg_at_k"):
            if not boundary_safe(row[key], 4):
                raise SystemExit(f"rounding-boundary hazard in {row} ({key})")
    for ranking in rankings:
        for _, value in ranking:
            if not boundary_safe(value, 6):
                raise SystemExit(f"rounding-boundary hazard in rank value {value!r}")


def catalog_csv(records: list[dict]) -> tuple[str, str]:
    lines = ["id,name,creation_date,n_spatial_objects,utility:avg,utility:sh1"]
    for r in records:
        lines.append(
            f"{r['id']},{r['name']},{r['creation_date']},{r['n_spatial_objects']},"
            f"{r['utilities']['avg']!r},{r['utilities']['sh1']!r}"
        )
    usage_lines = ["id,month,count"]
    for r in records:
        for month, count in r["usage"]:
            usage_lines.append(f"{r['id']},{month},{count}")
    return "\n".join(lines) + "\n", "\n".join(usage_lines) + "\n"


def main() -> None:
    rng = random.Random(SEED)
    records = build_records(rng)
    ids = sorted(r["id"] for r in records)

    # Ideal rankings: plausible perturbations of three different oracle
    # rankings, so the frozen NDCG values are interesting but reproducible.
    base_sh1 = [d for d, _ in ref.bf_ranking(ref.bf_values(records, AS_OF, PROFILE_WEIGHTS["sh1"]))]
    equal = {"utility": 1, "creation_date": 1, "n_objects": 1, "usage": 1}
    base_sh2 = [
        d
        for d, _ in ref.bf_ranking(
            ref.bf_values(records, AS_OF, equal, usage_mode="average")
        )
    ]
    one_hot_utility = {"utility": 1, "creation_date": 0, "n_objects": 0, "usage": 0}
    base_sh3 = [d for d, _ in ref.bf_ranking(ref.bf_values(records, AS_OF, one_hot_utility))]

    profiles = [
        {"id": "sh1", "weights": PROFILE_WEIGHTS["sh1"], "ideal_ranking": perturb(base_sh1, 12, 3, rng)},
        {"id": "sh2", "weights": PROFILE_WEIGHTS["sh2"], "ideal_ranking": perturb(base_sh2, 16, 4, rng)},
        {"id": "sh3", "weights": PROFILE_WEIGHTS["sh3"], "ideal_ranking": perturb(base_sh3, 8, 2, rng)},
    ]

    rank_sh1 = ref.bf_ranking(ref.bf_values(records, AS_OF, PROFILE_WEIGHTS["sh1"]))
    rank_sh3 = ref.bf_ranking(ref.bf_values(records, AS_OF, PROFILE_WEIGHTS["sh3"]))
    rows = ref.bf_report_rows(records, AS_OF, profiles, K, ["sh1", "avg"], "avg")
    check_boundaries(rows, [rank_sh1, rank_sh3])

    DATA_DIR.mkdir(parents=True, exist_ok=True)
    catalog_doc = {
        "as_of_date": AS_OF,
        "datasets": [
            {
                "id": r["id"],
                "name": r["name"],
                "creation_date": r["creation_date"],
                "n_spatial_objects": r["n_spatial_objects"],
                "usage": [{"month": month, "count": count} for month, count in r["usage"]],
                "utilities": r["utilities"],
            }
            for r in records
        ],
    }
    (DATA_DIR / "catalog.json").write_text(json.dumps(catalog_doc, indent=2) + "\n")
    datasets_csv, usage_csv = catalog_csv(records)
    (DATA_DIR / "catalog.csv").write_text(datasets_csv)
    (DATA_DIR / "usage.csv").write_text(usage_csv)
    for profile in profiles:
        (DATA_DIR / f"profile_{profile['id']}.json").write_text(
            json.dumps(profile, indent=2) + "\n"
        )

    (DATA_DIR / "golden_rank_sh1.csv").write_text(ref.render_rank_csv(rank_sh1))
    (DATA_DIR / "golden_rank_sh3.csv").write_text(ref.render_rank_csv(rank_sh3))
    (DATA_DIR / "golden_evaluate.csv").write_text(ref.render_report_csv(rows))
    (DATA_DIR / "golden_report.md").write_text(ref.render_report_markdown(rows, K))
    print(f"wrote fixture + goldens to {DATA_DIR}")
    assert ids == [f"ds-{i:02d}" for i in range(1, 16)]


if __name__ == "__main__":
    main()
