import numpy as np
import pytest

from crcodes import bip
from crcodes import constructions as con
from crcodes import orbits as ob
from crcodes import verify as vf
from crcodes.graphs import GraphSpec, adjacency_lists, vertex_index

S63 = GraphSpec("grassmann", 2, 6, 3)
S62 = GraphSpec("grassmann", 2, 6, 2)
S42 = GraphSpec("grassmann", 2, 4, 2)


def brute_force_assignments(inst):
    """All satisfying 0/1 vectors by full enumeration (r <= 20)."""
    A_ext, rhs = inst.rows()
    r = inst.r
    assert r <= 20
    X = ((np.arange(1 << r)[:, None] >> np.arange(r)) & 1).astype(np.int64)
    good = (X @ A_ext.T == rhs).all(axis=1)
    return sorted(tuple(row) for row in X[good])


@pytest.fixture(scope="module")
def gamma21():
    action = ob.singer_action(S63, 21)
    osys = ob.orbit_system(action)
    B = ob.quotient_matrix(S63, osys)
    return osys, B


def test_singer_21_orbits(gamma21):
    osys, B = gamma21
    assert osys.count == 465
    assert set(osys.sizes().tolist()) == {3}
    assert (B.sum(axis=1) == 98).all()


def test_singer_identity_exponent():
    action = ob.singer_action(S63, 63)  # a^63 = 1
    osys = ob.orbit_system(action)
    assert osys.count == 1395


def test_orbit_counts_invariant_under_modulus_choice():
    # same counts with the reciprocal modulus x^6 + x^5 + 1
    action = ob.singer_action(S63, 21, modulus=[1, 0, 0, 0, 0, 1, 1])
    osys = ob.orbit_system(action)
    assert osys.count == 465
    assert set(osys.sizes().tolist()) == {3}
    B = ob.quotient_matrix(S63, osys)
    assert (B.sum(axis=1) == 98).all()


def test_singer_21_fixed_vertices_on_lines_are_the_spread():
    action = ob.singer_action(S62, 21)
    osys = ob.orbit_system(action)
    fixed = sorted(int(o[0]) for o in osys.orbits if len(o) == 1)
    idx = vertex_index(S62)
    spread = con.desarguesian_2spread(2, 6)
    assert fixed == sorted(idx.id_of(b) for b in spread.blocks)
    assert osys.count == 21 + (651 - 21) // 3


def test_composed_generators_coarsen():
    a21 = ob.singer_action(S63, 21)
    a9 = ob.singer_action(S63, 9)
    both = ob.GroupAction(S63, [a21.generators[0], a9.generators[0]],
                          description="a21+a9")
    o21 = ob.orbit_system(a21)
    o9 = ob.orbit_system(a9)
    oboth = ob.orbit_system(both)
    assert oboth.count <= min(o21.count, o9.count)
    # every orbit of a single generator sits inside one combined orbit
    for orb in o21.orbits:
        assert len(set(oboth.orbit_of[orb].tolist())) == 1


def test_non_automorphism_rejected():
    perm = np.arange(S42.vertex_count, dtype=np.int64)
    perm[[0, 1]] = perm[[1, 0]]  # a transposition is not an automorphism here
    with pytest.raises(vf.VerificationError):
        ob.GroupAction(S42, [perm])


def test_quotient_matrix_identity_action_is_adjacency():
    perm = np.arange(S42.vertex_count, dtype=np.int64)
    osys = ob.orbit_system(ob.GroupAction(S42, [perm], description="identity"))
    B = ob.quotient_matrix(S42, osys)
    adj = adjacency_lists(S42)
    dense = np.zeros_like(B)
    for v in range(S42.vertex_count):
        dense[v][adj[v]] = 1
    assert np.array_equal(B, dense)


def test_quotient_edge_symmetry(gamma21):
    osys, B = gamma21
    sizes = osys.sizes()
    assert np.array_equal(B * sizes[:, None], (B * sizes[:, None]).T)


def test_feasible_parameters_table_rows():
    rows = bip.feasible_parameters(S63)
    by_theta = {row["eigenvalue"]: row for row in rows}
    assert [g1 for _, g1 in by_theta[5]["pairs"]] == list(range(3, 46, 3))
    assert [g1 for _, g1 in by_theta[35]["pairs"]] == [7, 14, 21, 28]
    assert [g1 for _, g1 in by_theta[-7]["pairs"]] == [21, 42]


def test_instance_invariants_and_targets(gamma21):
    osys, B = gamma21
    inst = bip.build_instance(S63, osys, 81, 12, B=B)
    assert inst.target_eigenvalue == 5
    assert inst.code_size == 1395 * 12 // 93 == 180
    A_ext, rhs = inst.rows()
    assert A_ext.shape == (466, 465)
    assert rhs[-1] == 180
    with pytest.raises(vf.VerificationError):
        bip.build_instance(S63, osys, 80, 12, B=B)  # size not integral


def test_known_witness_satisfies_instance(gamma21):
    osys, B = gamma21
    spread_lines = con.avoid_code(
        S63, con.desarguesian_2spread(2, 6)).complement()
    mask = np.zeros(S63.vertex_count, dtype=bool)
    mask[spread_lines.ids] = True
    x = np.array([1 if mask[o[0]] else 0 for o in osys.orbits], dtype=np.int64)
    inst = bip.build_instance(S63, osys, 72, 21, B=B)
    A_ext, rhs = inst.rows()
    assert ((A_ext @ x) == rhs).all()


@pytest.fixture(scope="module")
def singer42():
    osys = ob.orbit_system(ob.singer_action(S42, 5))
    B = ob.quotient_matrix(S42, osys)
    return osys, B


def test_singer_on_j242_orbits(singer42):
    osys, _ = singer42
    assert osys.count == 15
    assert sorted(osys.sizes().tolist()) == [1] * 5 + [3] * 10


@pytest.mark.parametrize("beta0,gamma1", [(18, 3), (15, 6), (12, 9), (9, 6)])
def test_solver_matches_brute_force(singer42, beta0, gamma1):
    osys, B = singer42
    try:
        inst = bip.build_instance(S42, osys, beta0, gamma1, B=B)
    except vf.VerificationError:
        assert (35 * gamma1) % (beta0 + gamma1) != 0
        return
    res = bip.solve(inst, mode="all")
    assert res.status in (bip.SAT, bip.UNSAT)
    got = sorted(tuple(int(v) for v in s) for s in res.solutions)
    assert got == brute_force_assignments(inst)
    counted = bip.solve(inst, mode="count")
    assert counted.count == len(got)


def test_spread_is_found_and_lifts(singer42):
    osys, B = singer42
    inst = bip.build_instance(S42, osys, 18, 3, B=B)
    res = bip.solve(inst, mode="first")
    assert res.status == bip.SAT
    code = bip.lift(res.solutions[0], osys, S42)
    rep = vf.verify_report(S42, code)
    assert rep["completely_regular"]
    assert rep["beta"] == [18] and rep["gamma"] == [3]
    assert rep["code_size"] == 5


def test_solver_determinism(singer42):
    osys, B = singer42
    inst = bip.build_instance(S42, osys, 15, 6, B=B)
    a = bip.solve(inst, mode="first", seed=7)
    b = bip.solve(inst, mode="first", seed=7)
    assert a.status == b.status == bip.SAT
    assert np.array_equal(a.solutions[0], b.solutions[0])
    assert a.nodes == b.nodes


def test_nonintegral_size_rejected_at_build():
    spec = GraphSpec("johnson", 1, 3, 1)
    perm = np.array([1, 2, 0], dtype=np.int64)
    osys = ob.orbit_system(ob.GroupAction(spec, [perm], description="rot"))
    assert osys.count == 1
    with pytest.raises(vf.VerificationError):
        bip.build_instance(spec, osys, 1, 1)  # |V| gamma1 / 2 is not integral


def test_inconsistent_parameters_unsat():
    # octahedron J(4,2): beta0 = 5 exceeds what a valency-4 vertex can do
    spec = GraphSpec("johnson", 1, 4, 2)
    perm = np.arange(6, dtype=np.int64)
    osys = ob.orbit_system(ob.GroupAction(spec, [perm], description="identity"))
    inst = bip.build_instance(spec, osys, 5, 1)
    res = bip.solve(inst, mode="all")
    assert res.status == bip.UNSAT and res.count == 0
    assert brute_force_assignments(inst) == []


def test_budget_exceeded_reported(gamma21):
    osys, B = gamma21
    inst = bip.build_instance(S63, osys, 84, 9, B=B)
    res = bip.solve(inst, mode="first", max_nodes=5)
    assert res.status == bip.BUDGET_EXCEEDED


def test_lift_edge_cases(gamma21):
    osys, _ = gamma21
    empty = bip.lift(np.zeros(465, dtype=np.int8), osys, S63)
    assert len(empty) == 0
    full = bip.lift(np.ones(465, dtype=np.int8), osys, S63)
    assert len(full) == 1395


GOLDEN_OPB = """* #variable= 3 #constraint= 4
* graph j:3,1 group identity beta0 2 gamma1 1
+1 x1 +1 x2 +1 x3 = 1 ;
+1 x1 +1 x2 +1 x3 = 1 ;
+1 x1 +1 x2 +1 x3 = 1 ;
+1 x1 +1 x2 +1 x3 = 1 ;
"""


def toy_triangle_instance():
    # triangle, identity orbits; theta target -1, so B - theta I is all ones
    spec = GraphSpec("johnson", 1, 3, 1)
    perm = np.arange(3, dtype=np.int64)
    osys = ob.orbit_system(ob.GroupAction(spec, [perm], description="identity"))
    return bip.build_instance(spec, osys, 2, 1)


def test_export_opb_golden():
    inst = toy_triangle_instance()
    text = bip.export_opb(inst)
    assert text == GOLDEN_OPB
    assert sum(1 for ln in text.splitlines()
               if ln and not ln.startswith("*")) == inst.r + 1


def test_export_opb_round_trip():
    inst = toy_triangle_instance()
    rows, rhs = bip.parse_opb(bip.export_opb(inst))
    A_ext, want_rhs = inst.rows()
    assert rhs == [int(v) for v in want_rhs]
    for i, row in enumerate(rows):
        dense = np.zeros(inst.r, dtype=np.int64)
        for j, c in row.items():
            dense[j] = c
        assert np.array_equal(dense, A_ext[i])


def test_export_lp_structure():
    inst = toy_triangle_instance()
    text = bip.export_lp(inst)
    assert text.startswith("\\ j:3,1")
    assert "Minimize" in text and "Binaries" in text and text.rstrip().endswith("End")
    assert " card: " in text
