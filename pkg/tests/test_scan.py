"""SCAN command blocks, repetition augmentation, and sub-graph replication."""

import pytest

import sfstkit as sk

TAB = sk.scan_symbol_table()


def decode_pairs(m, max_len=4):
    return {
        tuple(TAB.decode(ins)): tuple(TAB.decode(outs))
        for ins, outs in sk.language(m, max_len).items()
    }


def test_block_topology_matches_figure():
    blk = sk.build_scan_block("jump")
    assert blk.n_states == 10
    assert blk.start == 0
    assert sorted(blk.finals) == [1, 2, 3, 6, 7, 8, 9]
    assert len(blk.transitions) == 9
    assert sk.is_accessible(blk) and sk.is_coaccessible(blk)


def test_block_commands_match_reference_interpreter():
    for primitive in sorted(sk.PRIMITIVES):
        blk = sk.build_scan_block(primitive)
        lang = decode_pairs(blk)
        assert len(lang) == 7
        for cmd, actions in lang.items():
            assert list(actions) == sk.scan_reference_eval(cmd), cmd


def test_flagship_command_translations():
    blk = sk.build_scan_block("jump")
    assert TAB.decode(sk.transduce(blk, TAB.encode(["jump", "right"]))) == ["RTURN", "JUMP"]
    assert TAB.decode(sk.transduce(blk, TAB.encode(["jump"]))) == ["JUMP"]
    assert TAB.decode(sk.transduce(blk, TAB.encode(["jump", "around", "left"]))) == [
        "LTURN", "JUMP"] * 4
    assert TAB.decode(sk.transduce(blk, TAB.encode(["jump", "opposite", "right"]))) == [
        "RTURN", "RTURN", "JUMP"]


def test_run_to_state_consumes_primitive_silently():
    blk = sk.build_scan_block("jump")
    assert sk.run_to_state(blk, TAB.encode(["jump"])) == (1, ())


def test_path_homomorphism_through_the_block():
    blk = sk.build_scan_block("jump")
    assert sk.check_path_homomorphism(blk, TAB.encode(["jump", "right"]), 1)


def test_unknown_primitive_rejected():
    with pytest.raises(ValueError):
        sk.build_scan_block("sprint")


def repetition_counts():
    return {TAB.id("twice"): 2, TAB.id("thrice"): 3}


def test_augmentation_repeats_final_segment():
    aug = sk.augment_with_repetition(sk.build_scan_block("jump"), repetition_counts())
    got = sk.transduce(aug, TAB.encode(["jump", "right", "twice"]))
    assert TAB.decode(got) == ["RTURN", "JUMP", "RTURN", "JUMP"]
    assert TAB.decode(got) == sk.scan_reference_eval(["jump", "right", "twice"])


def test_augmentation_preserves_original_behavior():
    blk = sk.build_scan_block("walk")
    aug = sk.augment_with_repetition(blk, repetition_counts())
    base = sk.language(blk, 4)
    for ins, outs in base.items():
        assert sk.transduce(aug, ins) == outs
    assert aug.n_states > blk.n_states


def test_augmented_language_matches_reference_everywhere():
    blk = sk.build_scan_block("look")
    aug = sk.augment_with_repetition(blk, repetition_counts())
    lang = decode_pairs(aug, max_len=5)
    assert len(lang) == 21  # 7 commands, each bare/twice/thrice
    for cmd, actions in lang.items():
        assert list(actions) == sk.scan_reference_eval(cmd), cmd


def test_thrice_triples_output_length():
    aug = sk.augment_with_repetition(sk.build_scan_block("jump"), repetition_counts())
    for cmd in (["jump"], ["jump", "left"], ["jump", "around", "right"]):
        base = sk.transduce(aug, TAB.encode(cmd))
        tripled = sk.transduce(aug, TAB.encode(cmd + ["thrice"]))
        assert len(tripled) == 3 * len(base)
        assert tripled == base * 3


def test_augmentation_rejects_symbol_collision():
    blk = sk.build_scan_block("jump")
    with pytest.raises(ValueError):
        sk.augment_with_repetition(blk, {TAB.id("left"): 2})


def test_replicate_single_copy_is_prefixed_original():
    m = sk.generate(sk.GenConfig(n_states=4, input_alphabet_size=3, seed=21))
    entry = max(m.input_alphabet) + 1
    rep = sk.replicate_subgraph(m, 1, [entry])
    assert rep.n_states == m.n_states + 1
    for ins, outs in sk.language(m, 5).items():
        assert sk.transduce(rep, (entry,) + ins) == outs
    assert sk.transduce(rep, ()) is None


def test_replicate_copies_agree():
    blk = sk.build_scan_block("jump")
    entries = [100, 101, 102, 103]
    rep = sk.replicate_subgraph(blk, 4, entries)
    assert rep.n_states == 4 * blk.n_states + 1
    base = sk.language(blk, 4)
    for ins, outs in base.items():
        answers = {sk.transduce(rep, (e,) + ins) for e in entries}
        assert answers == {outs}


def test_replicate_minimization_keeps_core_structure():
    # the copies collapse, but never below the core block's state count
    blk = sk.build_scan_block("jump")
    entries = [100, 101, 102]
    rep = sk.replicate_subgraph(blk, 3, entries)
    small = sk.minimize(sk.trim(rep))
    core = sk.minimize(sk.trim(blk))
    assert small.n_states < rep.n_states
    assert small.n_states >= core.n_states


def test_replicate_argument_errors():
    blk = sk.build_scan_block("jump")
    with pytest.raises(ValueError):
        sk.replicate_subgraph(blk, 3, [100, 101])  # not enough symbols
    with pytest.raises(ValueError):
        sk.replicate_subgraph(blk, 2, [100, 100])  # duplicates
    with pytest.raises(ValueError):
        sk.replicate_subgraph(blk, 1, [TAB.id("jump")])  # collides with sigma
    with pytest.raises(ValueError):
        sk.replicate_subgraph(blk, 0, [])


def test_symbol_table_round_trip_is_bit_exact():
    text = TAB.to_text()
    assert sk.SymbolTable.from_text(text).to_text() == text
    assert TAB.id("jump") == 0 and TAB.word(0) == "jump"
    with pytest.raises(sk.ParseError):
        sk.SymbolTable.from_text("0 jump\n0 walk\n")
    with pytest.raises(sk.ParseError):
        sk.SymbolTable.from_text("zero jump\n")
