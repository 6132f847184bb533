import random

import numpy as np
import pytest

from crcodes import constructions as con
from crcodes import verify as vf
from crcodes.graphs import GraphSpec, adjacency_lists

S63 = GraphSpec("grassmann", 2, 6, 3)
S166 = GraphSpec("johnson", 1, 16, 6)


def brute_force_cell_counts(spec, cell_of):
    """Neighbor-per-cell counts via explicit adjacency (test oracle)."""
    adj = adjacency_lists(spec)
    nc = int(cell_of.max()) + 1
    out = np.zeros((spec.vertex_count, nc), dtype=np.int64)
    for v in range(spec.vertex_count):
        for w in adj[v]:
            out[v, cell_of[int(w)]] += 1
    return out


@pytest.mark.parametrize("spec_text,code_frac", [
    ("jq:2,4,2", 0.2), ("j:5,2", 0.4), ("jq:2,6,3", 0.1)])
def test_cell_counts_match_adjacency_oracle(spec_text, code_frac):
    from crcodes.graphs import parse_graph_spec
    spec = parse_graph_spec(spec_text)
    rng = random.Random(hash(spec_text) & 0xFFFF)
    ids = sorted(rng.sample(range(spec.vertex_count),
                            max(1, int(spec.vertex_count * code_frac))))
    part = vf.distance_partition(spec, ids)
    counts = vf.cell_neighbor_counts(spec, part.cell_of, part.rho + 1)
    assert np.array_equal(counts, brute_force_cell_counts(spec, part.cell_of))


def test_distance_partition_full_code():
    part = vf.distance_partition(S63, list(range(S63.vertex_count)))
    assert part.rho == 0
    assert part.sizes() == (1395,)


def test_distance_partition_empty_rejected():
    with pytest.raises(vf.VerificationError):
        vf.distance_partition(S63, [])


def test_three_spread_has_radius_two():
    spread = con.desarguesian_spread(2, 6, 3)
    ids = spread.block_ids()
    part = vf.distance_partition(S63, ids)
    assert part.rho == 2
    res = vf.check_completely_regular(S63, ids)
    assert res.ok


def test_sqs_avoid_pipeline():
    q4 = con.extended_hamming_sqs(4)
    code = con.avoid_code(S166, q4)
    res = vf.check_completely_regular(S166, code)
    assert res.ok
    assert res.partition.rho == 2
    assert res.partition.sizes() == (448, 6720, 840)
    nums = res.numbers
    assert nums.beta == (60, 6)
    assert nums.gamma == (4, 48)
    assert nums.quotient == ((0, 60, 0), (4, 50, 6), (0, 48, 12))
    eigs = vf.code_eigenvalues(nums.quotient, S166)
    assert eigs == [60, 8, -6]
    assert vf.eigenvalue_indices(S166, eigs) == [0, 4, 6]


def test_spread_avoid_j263():
    spread = con.desarguesian_2spread(2, 6)
    code = con.avoid_code(S63, spread)
    rep = vf.verify_report(S63, code)
    assert rep["completely_regular"]
    assert rep["rho"] == 1
    assert rep["beta"] == [21] and rep["gamma"] == [72]
    assert rep["complement_pair"] == {"beta0": 72, "gamma1": 21}
    assert rep["eigenvalues"] == [98, 5]
    assert rep["strength"] == 1


def test_counterexample_on_perturbed_code():
    spread = con.desarguesian_2spread(2, 6)
    code = con.avoid_code(S63, spread)
    ids = set(code.ids.tolist())
    outside = next(v for v in range(S63.vertex_count) if v not in ids)
    res = vf.check_completely_regular(S63, sorted(ids | {outside}))
    assert not res.ok
    ce = res.counterexample
    assert ce is not None
    assert ce.expected != ce.found
    # earliest violating vertex in canonical order
    counts = res.counts
    refs = {c: counts[res.partition.cells[c][0]]
            for c in range(res.partition.rho + 1)}
    for v in range(ce.vertex):
        c = int(res.partition.cell_of[v])
        assert np.array_equal(counts[v], refs[c])


def test_check_rejects_empty_and_full():
    with pytest.raises(vf.VerificationError):
        vf.check_completely_regular(S63, [])
    with pytest.raises(vf.VerificationError):
        vf.check_completely_regular(S63, list(range(S63.vertex_count)))


def test_code_eigenvalues_rho1_formula():
    # {m, m - beta0 - gamma1} for the hyperplane code
    code = con.hyperplane_code(S63)
    res = vf.check_completely_regular(S63, code)
    assert res.ok
    eigs = vf.code_eigenvalues(res.numbers.quotient, S63)
    m = S63.valency
    b0, g1 = res.numbers.beta[0], res.numbers.gamma[0]
    assert eigs == [m, m - b0 - g1] == [98, 35]


def test_code_eigenvalues_reject_non_graph_root():
    bad = ((0, 60), (5, 55))  # eigenvalues 60 and -5; -5 is not in the ladder
    with pytest.raises(vf.VerificationError):
        vf.code_eigenvalues(bad, S166)


def test_char_poly_simple():
    assert vf.char_poly([[2, 0], [0, 3]]) == [1, -5, 6]
    assert vf.char_poly([[0, 60, 0], [4, 50, 6], [0, 48, 12]]) == \
        [1, -62, 72, 2880]  # (x - 60)(x - 8)(x + 6)


def test_design_strength_of_table_codes():
    assert vf.design_strength(S63, con.hyperplane_code(S63).ids)[0] == 0
    assert vf.design_strength(S63, con.hyperplane_point_code(S63).ids)[0] == 0
    assert vf.design_strength(S63, con.symplectic_code().ids)[0] == 1


def test_strength_rule_matches_design_strength():
    for code in [con.hyperplane_code(S63), con.symplectic_code(),
                 con.avoid_code(S63, con.desarguesian_2spread(2, 6))]:
        res = vf.check_completely_regular(S63, code)
        assert res.ok
        eigs = vf.code_eigenvalues(res.numbers.quotient, S63)
        t_rule = vf.strength_from_eigenvalues(S63, eigs)
        t_design, _ = vf.design_strength(S63, code.ids)
        assert t_rule == t_design


def test_size_and_integrality_report():
    rep = vf.size_and_integrality_report(S63, 84, 9)
    assert rep["feasible"] and rep["size"] == 135 and rep["strength"] == 1
    # gamma1 not divisible by 3 on the eigenvalue-5 row
    rep2 = vf.size_and_integrality_report(S63, 88, 5)
    assert not rep2["feasible"]
    # gamma1 must be 0 mod 7 on the eigenvalue-35 row
    feas35 = [g1 for g1 in range(1, 32)
              if vf.size_and_integrality_report(S63, 63 - g1, g1)["feasible"]]
    assert feas35 == [7, 14, 21, 28]
    feas5 = [g1 for g1 in range(1, 47)
             if vf.size_and_integrality_report(S63, 93 - g1, g1)["feasible"]]
    assert feas5 == list(range(3, 46, 3))
    # eigenvalue outside the spectrum
    rep3 = vf.size_and_integrality_report(S63, 50, 8)
    assert not rep3["feasible"]


def test_complementation_duality_all_rho1_codes():
    spread_avoid = con.avoid_code(S63, con.desarguesian_2spread(2, 6))
    for code in [con.hyperplane_code(S63), con.hyperplane_point_code(S63),
                 con.symplectic_code(), spread_avoid]:
        res = vf.check_completely_regular(S63, code)
        assert res.ok and res.partition.rho == 1
        comp = code.complement()
        res_c = vf.check_completely_regular(S63, comp)
        assert res_c.ok and res_c.partition.rho == 1
        assert res_c.numbers.beta[0] == res.numbers.gamma[0]
        assert res_c.numbers.gamma[0] == res.numbers.beta[0]


def test_no_edges_between_far_cells_is_enforced():
    q4 = con.extended_hamming_sqs(4)
    code = con.avoid_code(S166, q4)
    res = vf.check_completely_regular(S166, code)
    counts = res.counts
    cells = res.partition.cells
    assert (counts[cells[0]][:, 2] == 0).all()
    assert (counts[cells[2]][:, 0] == 0).all()


def test_report_on_empty_code_is_clean():
    s64 = GraphSpec("grassmann", 2, 6, 4, allow_unbalanced=True)
    empty = con.avoid_code(s64, con.desarguesian_2spread(2, 6))
    rep = vf.verify_report(s64, empty)
    assert rep["code_size"] == 0
    assert rep["completely_regular"] is False
    assert "empty" in rep["error"]


def test_report_json_stability():
    import json
    code = con.hyperplane_code(S63)
    a = json.dumps(vf.verify_report(S63, code), indent=2)
    b = json.dumps(vf.verify_report(S63, code), indent=2)
    assert a == b
