import cmath
import math
import pytest

from knotasym.dilog import OCTAHEDRON_VOLUME, li2
from knotasym.knots import KnotSpec
from knotasym.saddle import (
    REFERENCE_TABLE, ChainPoleError, c_values, chain_from_x0, complete_solutions,
    critical_im_h, crosscheck_apoly_saddle, dual_path_check, generic_m_samples, h_torus,
    h_trefoil, h_twist, make_chain, residuals, trefoil_check, trefoil_saddle, volume,
    vpoly, vpoly_identity_suite, vroots, vzeros, whitehead_limit, x0_closed_form,
)
from knotasym.saddle.vpoly import numpy_roots_oracle

TW = lambda p: KnotSpec("twist", p)  # noqa: E731


def test_h_twist_p1_has_no_chain_sums():
    x0, m2 = 0.3 + 0.4j, 0.8 - 0.2j
    want = li2(m2) + li2(1 / m2) - li2(x0 / m2) - li2(m2 * x0) - li2(x0) + li2(x0)
    assert abs(h_twist(1, [x0], m2) - want) < 1e-14


def test_h_torus_term_by_term():
    x0, m2 = 0.5, 0.9
    want = (-cmath.log(m2) ** 2 + li2(m2) + li2(1 / m2) - li2(x0 / m2) - li2(m2 * x0)
            + li2(x0) - math.pi ** 2 / 6)
    assert abs(h_torus(1, [x0], m2) - want) < 1e-14
    assert abs(h_torus(1, [x0], m2) - h_trefoil("c", x0, m2)) < 1e-14
    # at m^2 = 1 the -p log(m^2)^2 term is gone
    x = [0.4 + 0.1j, 0.7 - 0.2j]
    rest = (cmath.log(x[1] / x[0]) ** 2 + 2 * li2(1) - li2(x[0]) - li2(x[0])
            + li2(x[0] / x[1]) + li2(x[1]) - 2 * math.pi ** 2 / 6)
    assert abs(h_torus(2, x, 1.0) - rest) < 1e-13


def test_figure_eight_value():
    assert h_twist(-1, [cmath.exp(-1j * math.pi / 3)], 1).imag == pytest.approx(2.02988, abs=1e-5)
    # rounded x0 is off the saddle, so Im H moves at first order
    assert h_twist(-1, [0.5 - 0.86603j], 1).imag == pytest.approx(2.02988, abs=1e-4)


def test_x0_closed_form_examples():
    assert x0_closed_form(TW(3), 1, 0.7) == pytest.approx(1)
    m2 = 0.81
    assert abs(x0_closed_form(KnotSpec("torus", 2), -m2 ** -5, m2)) < 1e-14
    assert x0_closed_form(TW(1), -m2 ** 3, m2) == pytest.approx((1 + m2 * m2) / m2)
    with pytest.raises(ZeroDivisionError):
        x0_closed_form(TW(1), -0.5, 0.5)


def test_chain_from_x0_examples():
    assert len(chain_from_x0(TW(1), 2.0, 0.5).x) == 1
    x, m2 = 2.0, 0.5
    assert c_values(TW(2), x, m2)[1] == pytest.approx((1 - (1 - x) * (1 - m2 * x) * (1 - x / m2)) / x)
    m2 = 0.9 ** 2
    x0 = (1 + m2 * m2) / m2
    assert c_values(TW(1), x0, m2)[1] == pytest.approx(1)
    chain = chain_from_x0(TW(1), x0, m2, -m2 ** 3)
    assert chain.admitted


def test_pole_is_reported():
    with pytest.raises(ChainPoleError) as exc:
        c_values(TW(3), 0, 0.5)
    assert exc.value.k == 0


def test_residual_sensitivity():
    m = 0.9 + 0.3j
    [check] = [c for c in crosscheck_apoly_saddle(-2, m).checks if "C_p(x0)" in c.identity][:1]
    ell = complex(check.witness["ell"])
    chain = chain_from_x0(TW(-2), x0_closed_form(TW(-2), ell, m * m), m * m, ell)
    assert chain.admitted
    bumped = list(chain.x)
    bumped[1] += 1e-3
    assert max(residuals(TW(-2), make_chain(TW(-2), bumped, m * m, ell))) > 1e-4


def test_reference_point_residuals():
    chain = make_chain(TW(-1), [complex(0.5, -0.86603)], 1.0, -1.0)
    assert max(chain.residuals) < 1e-5


def test_trefoil_variant_a_saddle():
    m2 = 0.7 + 0.2j
    x = trefoil_saddle("a", 0, m2)
    assert x == pytest.approx((1 - m2) * m2)
    assert trefoil_check(generic_m_samples(10)).ok


@pytest.mark.parametrize("p", [-1, 1, 2, -3])
def test_crosscheck_small(p):
    rep = crosscheck_apoly_saddle(p, generic_m_samples(4, seed=p + 10))
    assert rep.ok, rep.failures()


def test_crosscheck_p1_single_root():
    m = 0.8 + 0.5j
    rep = crosscheck_apoly_saddle(1, m)
    roots = [c for c in rep.checks if "C_p(x0)" in c.identity]
    assert len(roots) == 1
    assert complex(roots[0].witness["ell"]) == pytest.approx(-(m ** 6))


def test_crosscheck_figure_eight_real_m():
    rep = crosscheck_apoly_saddle(-1, 0.9)
    assert rep.ok
    assert len([c for c in rep.checks if "C_p(x0)" in c.identity]) == 2


@pytest.mark.parametrize("p", range(1, 6))
def test_torus_bridge(p):
    assert crosscheck_apoly_saddle(KnotSpec("torus", p), generic_m_samples(20)).ok


def test_crosscheck_rejects_unit_m():
    with pytest.raises(ValueError):
        crosscheck_apoly_saddle(2, 1.0)


def test_vpoly_examples():
    assert str(vpoly(0)) == "1"
    assert str(vpoly(1)) == "z^2 + z + 1"
    assert str(vpoly(-2)) == "z^3 + z^2 + 2*z + 1"
    v = {k: vpoly(k).poly for k in (0, 1, 2, 3)}
    z = v[1] - v[1] + type(v[1])((0, 1))
    assert v[2] - (z * z + 2) * v[1] + v[0] == 0
    assert v[3] * v[1] - v[2] * v[2] == -(z ** 3)
    assert v[1].evaluate_gaussian(0, 2) == (-3, 2)


def test_vpoly_suite_small():
    assert vpoly_identity_suite(12).ok


@pytest.mark.parametrize("k", [1, 2, -2, 3, -5, 6])
def test_vroots_match_numpy(k):
    ours = vroots(k)
    ref = list(numpy_roots_oracle(k))
    assert len(ours) == len(ref)
    assert max(min(abs(r - s) for s in ref) for r in ours) < 1e-8


def test_vzeros_examples():
    rows = vzeros([1])
    assert len(rows) == 2
    for r in rows:
        assert min(abs(r.root - complex(-0.5, s * math.sqrt(3) / 2)) for s in (1, -1)) < 1e-12
    rows = vzeros([5])
    assert len(rows) == 10
    assert all(min(abs(a.root.conjugate() - b.root) for b in rows) < 1e-8 for a in rows)
    rows = vzeros([50])
    assert len(rows) == 100 and max(r.residual for r in rows) < 1e-8
    assert len(vzeros([5, 10, 30, 50], upper_half=True)) == 95


def test_complete_solutions_examples():
    sols = complete_solutions(-1)
    assert sorted((round(s.x0.real, 5), round(abs(s.x0.imag), 5)) for s in sols) == [
        (0.5, 0.86603), (0.5, 0.86603)]
    [tri] = complete_solutions(1)
    assert tri.x0 == pytest.approx(2) and abs(tri.im_h) < 1e-12 and tri.im_h_dsum == 0
    sols = complete_solutions(2)
    best = min(sols, key=lambda s: abs(s.x0 - complex(1.21508, -1.30714)))
    assert abs(best.x0 - complex(1.21508, -1.30714)) < 1e-5
    assert best.im_h == pytest.approx(2.82812, abs=1e-5)


def test_volume_rows():
    for p in (-5, 4, -2):
        vol, x0 = REFERENCE_TABLE[p]
        row = volume(p)
        assert abs(row.volume - vol) <= 1e-5
        assert abs(row.x0.real - x0.real) <= 1e-5 and abs(row.x0.imag - x0.imag) <= 1e-5
    assert volume(1).volume == 0.0


def test_conjugate_root_flips_sign():
    row = volume(3)
    chain = next(s.chain for s in complete_solutions(3) if abs(s.x0 - row.x0.conjugate()) < 1e-9)
    assert critical_im_h(TW(3), chain.x, 1.0) == pytest.approx(-row.volume, abs=1e-8)


def test_dual_path():
    rep = dual_path_check(10)
    assert rep.ok, rep.failures()


def test_whitehead_limit_negative_side():
    rep = whitehead_limit(20, sign=-1)
    assert rep.checks[0].status and rep.checks[2].status
    assert volume(-20).volume < OCTAHEDRON_VOLUME
    with pytest.raises(ValueError):
        whitehead_limit(5)


def test_h_rejects_bad_input():
    with pytest.raises(ValueError):
        h_twist(0, [], 1)
    with pytest.raises(ValueError):
        h_twist(2, [0.5], 1)
    with pytest.raises(ValueError):
        h_trefoil("d", 0.5, 1)
