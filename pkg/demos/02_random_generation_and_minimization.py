"""Sample random machines uniformly and put them in canonical minimal form.

Topology is drawn per (state, symbol): the row of the 0/1 transition matrix
is either empty or a single unit vector, uniformly over those N+1 choices.
Each transition gets a uniform single-token output (with the empty string as
one extra outcome when empty emissions are on).  Draws are rejected until
the machine is accessible and co-accessible, then minimized.
"""

import numpy as np

import sfstkit as sk

cfg = sk.GenConfig(n_states=10, input_alphabet_size=10, output_alphabet_size=30,
                   allow_empty_emission=False, seed=7)
m = sk.generate(cfg)
print("sampled:", m)
print("trim:", sk.is_trim(m), "| canonical:", sk.same_structure(sk.minimize(m), m))
print("config echo:", cfg.metadata())

# Same seed, same machine, byte for byte.
again = sk.generate(sk.GenConfig(n_states=10, seed=7))
print("seed determinism:", sk.serialize_machine(m) == sk.serialize_machine(again))

# The raw sampling law: pool row choices and eyeball uniformity over N+1 options.
law_cfg = sk.GenConfig(n_states=3, input_alphabet_size=1, seed=99)
rng = law_cfg.rng()
draws = []
while len(draws) < 40_000:
    draws.extend(int(v) for v in sk.sample_matrices(law_cfg, rng).targets.ravel())
values, counts = np.unique(np.array(draws), return_counts=True)
print("\nrow-choice frequencies over {none, ->0, ->1, ->2} (expect ~0.25 each):")
for v, c in zip(values, counts):
    label = "none" if v < 0 else f"->{v}"
    print(f"  {label:>5}: {c / len(draws):.4f}")

# Minimization merges behaviorally identical states; equivalence is checked
# against canonical forms, so state numbering never matters.
perm = [int(i) for i in sk.make_rng(1).permutation(m.n_states)]
shuffled = sk.Sfst(
    m.n_states,
    perm[m.start],
    {perm[q]: w for q, w in m.finals.items()},
    {(perm[q], a): (w, perm[j]) for (q, a), (w, j) in m.transitions.items()},
    m.input_alphabet,
    m.output_alphabet,
)
print("\nequivalent to a renumbered copy:", sk.equivalent(m, shuffled))

# Empty emissions make roughly 1/(|Gamma|+1) of outputs empty.
lam_cfg = sk.GenConfig(n_states=30, input_alphabet_size=10, output_alphabet_size=9,
                       allow_empty_emission=True, seed=5)
rng = lam_cfg.rng()
sample = sk.attach_outputs(sk.sample_matrices(lam_cfg, rng), lam_cfg, rng)
outputs = [w for w, _ in sample.transitions.values()]
print(f"empty-output rate with |Gamma|=9: {sum(not w for w in outputs) / len(outputs):.3f}"
      " (expect ~0.10)")
