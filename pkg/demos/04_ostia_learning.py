"""Learn transducers symbolically with OSTIA state merging.

The learner builds a prefix-tree transducer, hoists outputs toward the root
(onward form), then folds frontier states into consolidated ones in shortlex
order, rolling back on any conflict.  Given a rich enough sample of a small
target, it recovers the target exactly; its cubic appetite for comparisons
is what keeps it away from big datasets.
"""

import itertools

import sfstkit as sk

# Warm-up: the identity function collapses to a single looping state.
pairs = [(w, w) for L in range(5) for w in itertools.product([0, 1], repeat=L)]
identity = sk.ostia_infer(pairs)
print("identity from", len(pairs), "pairs ->", identity)

# A random 3-state target, learned from every accepted string up to length 8.
target = sk.generate(sk.GenConfig(n_states=3, input_alphabet_size=3,
                                  output_alphabet_size=5, seed=1002))
train = sorted(sk.language(target, 8).items())
run = sk.run_ostia(train)
print(f"\ntarget {target} <- {len(train)} training pairs")
print(f"learned {run.machine}; equivalent: {sk.equivalent(run.machine, target)}")
print(f"work: {run.merge_attempts} merge attempts, {run.fold_calls} folds, "
      f"{run.pushbacks} pushbacks, {run.promotions} promotions, "
      f"{run.wall_time_s * 1000:.1f} ms")

# Identification in the limit: once the sample is rich enough, more data
# never breaks the hypothesis.
print("\nconvergence as the sample grows:")
for max_len in range(1, 9):
    sample = sorted(sk.language(target, max_len).items())
    learned = sk.ostia_infer(sample)
    verdict = "equivalent" if sk.equivalent(learned, target) else "not yet"
    print(f"  strings up to {max_len}: {len(sample):4d} pairs, "
          f"{learned.n_states:3d} states, {verdict}")

# The cubic trend, observable through the work counters.
print("\nmerge work vs training size (same target):")
for max_len in (4, 6, 8):
    sample = sorted(sk.language(target, max_len).items())
    r = sk.run_ostia(sample)
    print(f"  {len(sample):4d} pairs: {r.merge_attempts:5d} attempts, "
          f"{r.fold_calls:6d} folds")

# Sparse non-prefix-closed data stays consistent but generalizes little.
m = sk.generate(sk.GenConfig(n_states=5, seed=21))
d = sk.random_walk(m, sk.WalkConfig(target_pairs=150, seed=21))
sparse = sk.ostia_infer(d)
consistent = all(sk.transduce(sparse, i) == o for i, o in d)
print(f"\nsparse walk data: learned {sparse.n_states} states, "
      f"training-consistent: {consistent}")
