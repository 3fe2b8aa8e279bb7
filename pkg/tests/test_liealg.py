import json
import random
from fractions import Fraction

import pytest

from ginv.linalg import determinant, exact_rank, matmul
from ginv.liealg import (
    AlgebraError,
    LieAlgebraSpec,
    abelian,
    adjoint_matrix,
    algebra_from_dict,
    algebra_rank,
    algebra_to_dict,
    build_standard,
    change_basis,
    is_semisimple,
    killing_form,
    load_algebra,
    permute_basis,
    profile,
    validate,
)
from oracles import full_table, gl_combination_bracket, jacobi_residual

BUILTIN_NAMES = ["sl2", "sl3", "so3", "so4", "so5", "heisenberg3", "abelian:4"]


def nonzero(spec):
    return {k: v for k, v in full_table(spec).items()}


def test_sl2_constants(sl2):
    assert sl2.m == 3
    assert sl2.brackets == {(1, 1, 2): 2, (2, 1, 3): -1, (3, 2, 3): 2}
    assert sl2.c(1, 2, 1) == -2


def test_heisenberg_constants(heis):
    assert heis.brackets == {(2, 1, 3): -1}


def test_so3_constants_from_gl_identity(so3):
    basis = {1: (1, 2), 2: (1, 3), 3: (2, 3)}
    elem = {k: {(i, j): 1, (j, i): -1} for k, (i, j) in basis.items()}
    for b in range(1, 4):
        for g in range(b + 1, 4):
            br = gl_combination_bracket(elem[b], elem[g])
            # coordinates: coefficient on e_ij with i < j
            coords = {a: br.get(basis[a], 0) for a in basis}
            for a in basis:
                assert so3.c(a, b, g) == coords[a]
    assert so3.brackets == {(3, 1, 2): -1, (2, 1, 3): 1, (1, 2, 3): -1}


def test_unknown_and_out_of_range_names():
    for bad in ("g2", "sl1", "so2", "abelian:0", "sp4"):
        with pytest.raises(AlgebraError):
            build_standard(bad)


def test_name_variants():
    assert build_standard("sl(3)").m == 8
    assert build_standard("so:5").m == 10
    assert build_standard("abelian(2)").m == 2


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtins_validate(name):
    assert validate(build_standard(name)) == []


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_jacobi_oracle_on_builtins(name):
    spec = build_standard(name)
    table = full_table(spec)
    for b in range(1, spec.m + 1):
        for g in range(1, spec.m + 1):
            assert all(table.get((a, b, g), 0) == -table.get((a, g, b), 0) for a in range(1, spec.m + 1))
            for d in range(1, spec.m + 1):
                assert not any(jacobi_residual(table, spec.m, b, g, d))


def test_validate_reports_broken_sl2(sl2):
    broken = sl2.with_constant(1, 1, 2, 3)
    report = validate(broken)
    assert len(report) == 1
    v = report[0]
    assert v.kind == "jacobi" and v.indices == (1, 2, 3)
    assert v.residual == (0, -1, 0)
    # the summation oracle agrees
    assert jacobi_residual(full_table(broken), 3, 1, 2, 3) == [0, -1, 0]


def test_validate_antisymmetry_of_raw_table(sl2):
    raw = dict(full_table(sl2))
    raw[(1, 2, 1)] = Fraction(5)
    kinds = {v.kind for v in validate(sl2, raw)}
    assert kinds == {"antisymmetry"}


def test_storage_rejects_beta_ge_gamma():
    with pytest.raises(AlgebraError):
        LieAlgebraSpec("bad", 2, {(1, 2, 1): 1})
    with pytest.raises(AlgebraError):
        LieAlgebraSpec("bad", 2, {(1, 1, 1): 1})


def test_killing_examples(sl2, heis):
    assert all(v == 0 for row in killing_form(heis) for v in row)
    assert all(v == 0 for row in killing_form(abelian(4)) for v in row)
    assert determinant(killing_form(sl2)) == -128
    assert not is_semisimple(heis)
    assert is_semisimple(sl2)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_killing_matches_trace_of_adjoints(name):
    spec = build_standard(name)
    k = killing_form(spec)
    ads = [adjoint_matrix(spec, [int(i == j) for i in range(spec.m)]) for j in range(spec.m)]
    for b in range(spec.m):
        for g in range(spec.m):
            prod = matmul(ads[b], ads[g])
            assert k[b][g] == sum(prod[i][i] for i in range(spec.m))
            assert k[b][g] == k[g][b]


@pytest.mark.parametrize("name,rank", [("sl2", 1), ("so3", 1), ("so4", 2), ("sl3", 2), ("so5", 2)])
def test_algebra_rank(name, rank):
    assert algebra_rank(build_standard(name)).rank == rank


def test_abelian_rank_and_permutation_invariance(sl2):
    for m in (1, 3, 5):
        assert algebra_rank(abelian(m)).rank == m
    perm = permute_basis(sl2, [3, 1, 2])
    assert validate(perm) == []
    assert algebra_rank(perm).rank == 1


def test_adjoint_matrix_examples(sl2, heis):
    assert adjoint_matrix(sl2, [0, 1, 0]) == [[-2, 0, 0], [0, 0, 0], [0, 0, 2]]
    assert adjoint_matrix(sl2, [0, 0, 0]) == [[0] * 3 for _ in range(3)]
    ad = adjoint_matrix(heis, [0, 0, 1])
    assert ad == [[0, 0, 0], [1, 0, 0], [0, 0, 0]]
    with pytest.raises(AlgebraError):
        adjoint_matrix(sl2, [1, 2])


@pytest.mark.parametrize("name", ["sl2", "so4", "heisenberg3"])
def test_ad_rank_bounded_by_m_minus_l(name):
    spec = build_standard(name)
    res = algebra_rank(spec)
    rng = random.Random(11)
    ranks = [exact_rank(adjoint_matrix(spec, [rng.randint(-20, 20) for _ in range(spec.m)])) for _ in range(8)]
    assert max(ranks) <= spec.m - res.rank
    assert exact_rank(adjoint_matrix(spec, res.witness)) == spec.m - res.rank


def _random_invertible(rng, m):
    while True:
        p = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(m)]
        if determinant(p) != 0:
            return p


def test_random_basis_changes_of_sl2(sl2):
    rng = random.Random(2024)
    for _ in range(5):
        spec = change_basis(sl2, _random_invertible(rng, 3))
        assert validate(spec) == []  # includes the matrix representation check
        table = full_table(spec)
        for b in range(1, 4):
            for g in range(1, 4):
                for d in range(1, 4):
                    assert not any(jacobi_residual(table, 3, b, g, d))
        assert algebra_rank(spec).rank == 1
        assert is_semisimple(spec)


def test_profile_invariants():
    for name in BUILTIN_NAMES:
        prof = profile(build_standard(name))
        if prof.abelian:
            assert prof.l == prof.m
        if prof.semisimple:
            assert prof.m > 2 * prof.l


def test_json_roundtrip(tmp_path, sl2):
    path = tmp_path / "sl2.json"
    path.write_text(json.dumps(algebra_to_dict(sl2), indent=2))
    loaded = load_algebra(path)
    assert loaded.brackets == sl2.brackets and loaded.m == 3


def test_json_rejects_beta_ge_gamma_with_line(tmp_path):
    doc = {"name": "x", "dim": 3, "brackets": [
        {"beta": 1, "gamma": 2, "coeffs": {"1": "2"}},
        {"beta": 3, "gamma": 2, "coeffs": {"1": "1/2"}},
    ]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc, indent=2))
    with pytest.raises(AlgebraError) as exc:
        load_algebra(path)
    text = path.read_text().splitlines()
    line = int(str(exc.value).split(":")[1])
    assert '"beta": 3' in text[line - 1]


def test_json_syntax_error_has_line(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "name": "x",\n  "dim": 2\n  "brackets": []\n}')
    with pytest.raises(AlgebraError, match=r"broken.json:4:"):
        load_algebra(path)


def test_json_rejects_float_coefficients():
    with pytest.raises(AlgebraError):
        algebra_from_dict({"name": "x", "dim": 2, "brackets": [{"beta": 1, "gamma": 2, "coeffs": {"1": 0.5}}]})


def test_rationals_kept_exact():
    spec = algebra_from_dict({"name": "x", "dim": 2, "brackets": [{"beta": 1, "gamma": 2, "coeffs": {"2": "6/4"}}]})
    assert spec.c(2, 1, 2) == Fraction(3, 2)
    assert validate(spec) == []
