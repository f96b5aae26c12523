import itertools

import pytest

import zplap


def brute_solutions(p, a, b):
    n = len(a[0])
    out = set()
    for x in itertools.product(range(p), repeat=n):
        if all(sum(r[j] * x[j] for j in range(n)) % p == bi % p for r, bi in zip(a, b)):
            out.add(x)
    return out


def test_primes():
    assert zplap.is_prime(13)
    assert not zplap.is_prime(15)
    assert zplap.prev_prime(2**61) == 2**61 - 1


@pytest.mark.parametrize("p", [5, 7, 13, 101])
def test_resistance_exhaustive(p):
    for r in range(1, p):
        c = zplap.build_resistance(p, r)
        assert c.resistance == r
        assert c.is_unit_weight()
        assert c.verify()


def test_resistance_large_prime():
    p = 2**61 - 1
    r = 123456789123456789
    c = zplap.build_resistance(p, r)
    assert c.resistance == r
    assert c.verify()
    assert (c.weight * r) % p == 1
    lap = c.laplacian()
    assert all(sum(row) % p == 0 for row in lap)


def test_resistance_rejects_zero():
    with pytest.raises(ValueError):
        zplap.build_resistance(13, 0)


def test_schur_of_path():
    p = 13
    path = [[1, p - 1, 0], [p - 1, 2, p - 1], [0, p - 1, 1]]
    s = zplap.schur(p, path, [0, 2])
    half = pow(2, -1, p)
    assert s == [[half, p - half], [p - half, half]]


def test_solve_matches_brute_force():
    p = 7
    a = [[1, 2, 3], [2, 4, 6]]
    b = [1, 2]
    s = zplap.solve(p, a, b)
    assert not s["empty"]
    assert len(s["basis"]) == 2
    assert p ** len(s["basis"]) == len(brute_solutions(p, a, b))


@pytest.mark.parametrize("reduce", [zplap.general_to_laplacian, zplap.general_to_walk])
def test_general_reductions(reduce):
    p = 7
    a = [[1, 2, 0], [0, 3, 4]]
    for b in ([1, 2], [0, 0], [5, 6]):
        r = reduce(p, a, b)
        assert r.verify()
        assert r.stats["nnz_in"] == 4


def test_laplacian_shape():
    p = 7
    a = [[1, 2, 0], [0, 3, 4]]
    r = zplap.general_to_laplacian(p, a, [1, 2])
    assert r.dim == 2 * (2 + 3)
    assert r.is_laplacian()
    assert r.backmap_kind == "difference"


def test_unit_and_lowdegree():
    p = 13
    lap = [[9, 8, 9], [8, 7, 11], [9, 11, 6]]
    b = [1, 2, 10]
    unit = zplap.laplacian_to_unitweight(p, lap, b)
    assert unit.is_unit_weight() and unit.verify()
    low = zplap.laplacian_to_lowdegree(p, lap, b)
    assert low.verify()
    x = low.back([0] * low.dim)
    assert len(x) == 3


def test_normalized_walk():
    p = 13
    lap = [[2, 12, 12], [12, 2, 12], [12, 12, 2]]
    r = zplap.laplacian_to_normalized_walk(p, lap, [1, 12, 0])
    assert r.verify()
    assert r.dim >= 3


def test_symdet():
    q = 2**61 - 1
    singular = zplap.symdet(q, [[1, 2], [2, 4]])
    assert singular["det_zero_exact"] is True
    assert singular["det_zero_randomized"] is True
    assert singular["maxm"] <= 3 and singular["pdeg"] == 1
    regular = zplap.symdet(q, [[1, 0, 2], [0, 3, 0], [4, 0, 5]])
    assert regular["det_zero_exact"] is False
    assert regular["det_zero_randomized"] is False
    with pytest.raises(zplap.ZeroRowError):
        zplap.symdet(q, [[1, 0], [0, 0]])
