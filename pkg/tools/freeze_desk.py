"""Regenerate the frozen desk-scale instance set and its grid-oracle values.

    python tools/freeze_desk.py            # instances + oracle values
    python tools/freeze_desk.py --check    # recompute and compare, write nothing
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from renyi_lab import instances as inst
from renyi_lab import oracle
from renyi_lab.capacity import FUNCTIONALS

DATA = Path(__file__).resolve().parents[1] / "src" / "renyi_lab" / "data"
ORDERS = (0.7, 2.0)
MI_STEP = 1e-3
LP_STEP = {4: 1e-3, 6: 2e-3}
CAP_STEP = 1e-3
CAP_INNER_XY = {2: 1e-3, 3: 4e-3}


def build_instances():
    out = {}
    out["product_uniform"] = inst.product_joint([0.5, 0.5], [0.5, 0.5])
    out["product_weighted"] = inst.product_joint(
        [0.7, 0.3], [0.2, 0.5, 0.3], gamma_x=[2.0, 0.5], gamma_y=[1.0, 3.0, 0.25]
    )
    out["diagonal"] = inst.diagonal_joint(2)
    out["bsc_0.1_uniform"] = inst.joint_from([0.5, 0.5], inst.bsc(0.1))
    out["bsc_0.25_uniform"] = inst.joint_from([0.5, 0.5], inst.bsc(0.25))
    out["bsc_0.1_skewed"] = inst.joint_from([0.75, 0.25], inst.bsc(0.1))
    out["bec_0.3_uniform"] = inst.joint_from([0.5, 0.5], inst.bec(0.3))
    out["z_0.2"] = inst.joint_from([0.6, 0.4], inst.z_channel(0.2))
    for seed in range(8):
        rng = np.random.default_rng(seed)
        out[f"random_seed_{seed}"] = inst.random_joint(rng, 2, 2 + seed % 2, weighted=seed % 2 == 1)
    return out


def oracle_values(joints):
    values = {}
    for name, joint in joints.items():
        n, m = joint.shape
        channel = joint.channel()
        entry = {}
        for a in ORDERS:
            key = repr(a)
            row = {
                "sibson": oracle.grid_minimize_divergence("sibson", joint, a, MI_STEP)[0],
                "augustin": oracle.grid_minimize_divergence("augustin", joint, a, MI_STEP)[0],
                "lp": oracle.grid_minimize_divergence("lp", joint, a, LP_STEP[n * m])[0],
            }
            for f in FUNCTIONALS:
                inner = CAP_INNER_XY[m] if f in ("I_xy", "K_xy", "J") else CAP_STEP
                row[f"C_{f}"] = oracle.grid_maximize_capacity(channel, f, a, CAP_STEP, inner)[0]
            entry[key] = row
        values[name] = entry
    return values


def dump(obj):
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    joints = build_instances()
    inst_text = dump({"instances": {k: v.to_dict() for k, v in joints.items()}})
    oracle_text = dump(
        {
            "orders": list(ORDERS),
            "steps": {"mi": MI_STEP, "lp": LP_STEP, "capacity": CAP_STEP, "capacity_inner_xy": CAP_INNER_XY},
            "values": oracle_values(joints),
        }
    )
    targets = {DATA / "desk_instances.json": inst_text, DATA / "desk_oracle.json": oracle_text}
    if args.check:
        stale = [p.name for p, t in targets.items() if not p.exists() or p.read_text() != t]
        print("stale: " + ", ".join(stale) if stale else "up to date")
        return 1 if stale else 0
    for path, text in targets.items():
        path.write_text(text)
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
