"""Engineer high- and low-coverage training splits for the neural harness.

For each machine this writes, under --out/machine_<i>/:

  machine.sfst            the generating transducer
  high_train.tsv          a random split whose every transition clears
  high_test.tsv           --high-threshold training crossings
  low_train.tsv           a split where one chosen transition is crossed
  low_test_affected.tsv   fewer than --low-cap times; the affected test set
                          holds only strings that cross that transition
  splits.txt              the engineered coverage numbers, key=value

The neural side never reads machine.sfst during training; it is only there
for the coverage join in evaluation reports.
"""

import argparse
from pathlib import Path

import sfstkit as sk


def engineered_splits(m, d, high_threshold, low_cap, rng):
    full = sk.coverage(m, d, threshold=high_threshold)
    high = sk.split(d, "random", 0.8, rng)
    high_cov = sk.coverage(m, high.train, threshold=high_threshold)

    # starve the least-covered transition: keep only a handful of the pairs
    # that cross it in training, hold the rest out as the affected test set
    target = min(full.per_transition, key=full.per_transition.get)
    crossing, clear = [], []
    for i, (ins, _outs) in enumerate(d.pairs):
        q = m.start
        crossings = 0
        for a in ins:
            if (q, a) == target:
                crossings += 1
            q = m.transitions[(q, a)][1]
        (crossing if crossings else clear).append((i, crossings))
    keep, kept_crossings = [], 0
    for i, crossings in crossing[:-1]:
        if kept_crossings + crossings >= low_cap:
            break
        keep.append(i)
        kept_crossings += crossings
    low_train = d.subset(sorted([i for i, _ in clear] + keep))
    affected = d.subset([i for i, _ in crossing if i not in set(keep)])
    low_cov = sk.coverage(m, low_train, threshold=high_threshold)
    lines = [
        f"target_transition={target[0]},{target[1]}",
        f"full_min_coverage={full.min_count}",
        f"high_train_min_coverage={high_cov.min_count}",
        f"high_threshold_met={str(high_cov.min_count >= high_threshold).lower()}",
        f"low_train_target_coverage={low_cov.per_transition[target]}",
        f"affected_test_pairs={len(affected.pairs)}",
    ]
    return high, low_train, affected, lines


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True)
    ap.add_argument("--machines", type=int, default=5)
    ap.add_argument("--states", type=int, default=5)
    ap.add_argument("--pairs", type=int, default=20_000)
    ap.add_argument("--max-steps", type=int, default=50)
    ap.add_argument("--sigma", type=int, default=10)
    ap.add_argument("--gamma", type=int, default=30)
    ap.add_argument("--high-threshold", type=int, default=400)
    ap.add_argument("--low-cap", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    root = Path(args.out)
    for i in range(args.machines):
        base = root / f"machine_{i}"
        base.mkdir(parents=True, exist_ok=True)
        m = sk.generate(sk.GenConfig(
            n_states=args.states, input_alphabet_size=args.sigma,
            output_alphabet_size=args.gamma, seed=args.seed + 31 * i))
        d = sk.random_walk(m, sk.WalkConfig(target_pairs=args.pairs,
                                            max_steps=args.max_steps,
                                            seed=args.seed + 31 * i + 1))
        rng = sk.make_rng(args.seed + 31 * i + 2)
        high, low_train, affected, lines = engineered_splits(
            m, d, args.high_threshold, args.low_cap, rng)
        (base / "machine.sfst").write_text(sk.serialize_machine(m))
        header = (f"machine: {d.machine_id}",)
        (base / "high_train.tsv").write_text(sk.serialize_pairs(high.train.pairs, header))
        (base / "high_test.tsv").write_text(sk.serialize_pairs(high.test.pairs, header))
        (base / "low_train.tsv").write_text(sk.serialize_pairs(low_train.pairs, header))
        (base / "low_test_affected.tsv").write_text(
            sk.serialize_pairs(affected.pairs, header))
        (base / "splits.txt").write_text("\n".join(lines) + "\n")
        print(f"machine_{i}: " + " ".join(lines))


if __name__ == "__main__":
    main()
