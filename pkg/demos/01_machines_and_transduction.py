"""Build a transducer by hand, run it, and round-trip it through text.

A machine maps input token strings to output token strings: each transition
consumes one input token and emits a (possibly empty) output string, and the
state the walk ends in contributes its final output.  Undefined inputs give
None, not an exception.
"""

import sfstkit as sk

# A two-state cycle: 0 --a/x--> 1, 1 --b/yz--> 0, with final output w at 0.
A, B = 0, 1
X, Y, Z, W = 0, 1, 2, 3
m = sk.Sfst(
    n_states=2,
    start=0,
    finals={0: (W,)},
    transitions={(0, A): ((X,), 1), (1, B): ((Y, Z), 0)},
    input_alphabet={A, B},
    output_alphabet={X, Y, Z, W},
)

print("machine:", m)
print("t(a b)    =", sk.transduce(m, (A, B)), "   (x, then yz, then final w)")
print("t(a b a)  =", sk.transduce(m, (A, B, A)), "  (stops in a non-final state)")
print("t(empty)  =", sk.transduce(m, ()), "           (final output of the start)")

# The path output factors through any intermediate state.
ins = (A, B, A, B)
for split in range(len(ins) + 1):
    assert sk.check_path_homomorphism(m, ins, split)
print(f"path output of {ins} factors at every split point")

# run_to_state exposes the walk without the final output.
print("run_to_state(a) =", sk.run_to_state(m, (A,)))

# Everything serializes to a line-oriented text format and back, exactly.
text = sk.serialize_machine(m)
print("\nserialized form:\n" + text)
assert sk.parse_machine(text) == m
print("parse(print(m)) == m")

# The first few defined pairs of the machine's partial function:
for ins, outs in sorted(sk.language(m, 4).items(), key=lambda p: (len(p[0]), p[0])):
    print(f"  {ins} -> {outs}")
