import math
import os

import numpy as np
import pytest

from selbergfe.geodesics import (BOLZA_LENGTH, FuchsianGroup, LengthSpectrum,
                                 Mat2, SpectrumFormatError, bolza_group,
                                 enumerate_spectrum, euler_zeta,
                                 geodesic_count, load_spectrum, pgt_table,
                                 save_spectrum, selberg_Z, zeta_motive_numeric,
                                 _letter_matrices)
from selbergfe.laurent import LaurentPoly
from selbergfe.special import DomainError


@pytest.fixture(scope="module")
def bolza():
    return bolza_group()


@pytest.fixture(scope="module")
def spectrum5(bolza):
    return enumerate_spectrum(bolza, 5)


def test_mat2_renormalization():
    m = Mat2(2.0, 0.0, 0.0, 0.5000001)
    r = m.renormalized()
    assert abs(r.det() - 1.0) < 1e-12


def test_generator_traces(bolza):
    for g in bolza.generators:
        assert abs(g.trace()) == pytest.approx(2 + 2 * math.sqrt(2), abs=1e-12)
        assert abs(g.det() - 1.0) < 1e-13


def test_generator_length_matches_systole(bolza):
    for g in bolza.generators:
        ell = 2 * math.acosh(abs(g.trace()) / 2)
        assert ell == pytest.approx(BOLZA_LENGTH, abs=1e-12)


def test_non_hyperbolic_generator_rejected():
    with pytest.raises(ValueError):
        FuchsianGroup([Mat2(1.0, 0.0, 0.0, 1.0)], "bad")


def test_relator_exists_at_length_8(bolza):
    """Exhaustive search over cyclically reduced length-8 words finds
    exactly one relator orbit evaluating to +-identity."""
    letters = _letter_matrices(bolza)
    words = np.arange(8, dtype=np.int8)[:, None]
    mats = letters.copy()
    for n in range(2, 9):
        bw, bm = [], []
        for letter in range(8):
            mask = words[:, -1] != (letter ^ 1)
            sub = words[mask]
            bw.append(np.concatenate(
                [sub, np.full((sub.shape[0], 1), letter, np.int8)], axis=1))
            bm.append(mats[mask] @ letters[letter])
        words, mats = np.concatenate(bw), np.concatenate(bm)
    cyc = words[:, 0] != (words[:, -1] ^ 1)
    mats = mats[cyc]
    signs = np.sign(mats[:, 0, 0])[:, None, None]
    dev = np.max(np.abs(mats - signs * np.eye(2)), axis=(1, 2))
    hits = dev < 1e-9
    # one relator orbit: 8 rotations x 2 orientations
    assert hits.sum() == 16


def test_spectrum_word_length_one(bolza):
    sp = enumerate_spectrum(bolza, 1)
    assert len(sp.entries) == 1
    ell, mult = sp.entries[0]
    assert ell == pytest.approx(BOLZA_LENGTH, abs=1e-10)
    assert mult == 8  # four generators and their inverses


def test_spectrum_monotone_and_prefix_stable(bolza, spectrum5):
    sp4 = enumerate_spectrum(bolza, 4)
    assert len(spectrum5.entries) >= len(sp4.entries)
    prefix = [e for e in sp4.entries if e[0] <= sp4.horizon]
    assert spectrum5.entries[:len(prefix)] == prefix


def test_spectrum_rejects_bad_args(bolza):
    with pytest.raises(ValueError):
        enumerate_spectrum(bolza, 0)
    with pytest.raises(ValueError):
        enumerate_spectrum(bolza, 3, threads=0)


def test_spectrum_multiplicities_even(spectrum5):
    assert all(m % 2 == 0 for _, m in spectrum5.entries)


def test_spectrum_deterministic(bolza, spectrum5):
    again = enumerate_spectrum(bolza, 5, threads=4)
    assert again.entries == spectrum5.entries
    assert again.horizon == spectrum5.horizon


def test_spectrum_invariants(spectrum5):
    lengths = [l for l, _ in spectrum5.entries]
    assert all(b - a > 1e-9 for a, b in zip(lengths, lengths[1:]))
    assert spectrum5.horizon <= lengths[-1]


# -- persistence ---------------------------------------------------------

def test_save_load_roundtrip(spectrum5, tmp_path):
    path = str(tmp_path / "sp.txt")
    save_spectrum(spectrum5, path)
    loaded = load_spectrum(path)
    assert loaded.entries == spectrum5.entries
    assert loaded.genus == spectrum5.genus
    assert loaded.horizon == spectrum5.horizon


def test_load_rejects_decreasing(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("# genus=2\n# horizon=2.0\n3.0 2\n2.0 2\n")
    with pytest.raises(SpectrumFormatError) as err:
        load_spectrum(str(path))
    assert err.value.lineno == 4


def test_load_rejects_missing_genus(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("# horizon=2.0\n3.0 2\n")
    with pytest.raises(SpectrumFormatError):
        load_spectrum(str(path))


def test_load_rejects_malformed_row(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("# genus=2\n# horizon=2.0\n3.0\n")
    with pytest.raises(SpectrumFormatError) as err:
        load_spectrum(str(path))
    assert err.value.lineno == 3


# -- Euler products ------------------------------------------------------

def _tiny_spectrum():
    return LengthSpectrum(entries=[(3.0571, 1)], genus=2,
                          source="test", horizon=3.0571)


def test_selberg_Z_empty_spectrum():
    sp = LengthSpectrum(entries=[], genus=2, source="test", horizon=0.0)
    assert selberg_Z(2.0, sp).value == 1.0
    assert euler_zeta(2.0, sp).value == 1.0


def test_selberg_Z_single_entry():
    sp = _tiny_spectrum()
    expected = 1.0
    for n in range(40):
        expected *= 1 - math.exp(-3.0571 * (2 + n))
    assert selberg_Z(2.0, sp).value == pytest.approx(expected, rel=1e-15)


def test_selberg_Z_in_unit_interval(spectrum5):
    v = selberg_Z(4.0, spectrum5).value
    assert 0 < v < 1


def test_euler_zeta_above_one(spectrum5):
    assert euler_zeta(2.0, spectrum5).value > 1


def test_domain_errors(spectrum5):
    with pytest.raises(DomainError):
        selberg_Z(1.0, spectrum5)
    with pytest.raises(DomainError):
        euler_zeta(0.9, spectrum5)


@pytest.mark.parametrize("s", [1.5, 2.0, 3.0])
def test_telescoping(spectrum5, s):
    lhs = euler_zeta(s, spectrum5).value
    rhs = selberg_Z(s + 1, spectrum5).value / selberg_Z(s, spectrum5).value
    assert abs(lhs - rhs) / lhs < 1e-13


def test_zeta_motive_numeric(spectrum5):
    f = LaurentPoly({1: 1, 0: -1})
    v = zeta_motive_numeric(f, 4.0, spectrum5).value
    expected = euler_zeta(3.0, spectrum5).value / euler_zeta(4.0, spectrum5).value
    assert v == pytest.approx(expected, rel=1e-13)


def test_zeta_motive_trivial(spectrum5):
    v = zeta_motive_numeric(LaurentPoly({0: 1}), 2.0, spectrum5).value
    assert v == pytest.approx(euler_zeta(2.0, spectrum5).value, rel=1e-14)


def test_zeta_motive_domain_error_names_k(spectrum5):
    f = LaurentPoly({1: 1, 0: -1})
    with pytest.raises(DomainError) as err:
        zeta_motive_numeric(f, 1.5, spectrum5)
    assert "k=1" in str(err.value)


# -- counting ------------------------------------------------------------

def test_count_below_systole(spectrum5):
    assert geodesic_count(math.exp(spectrum5.entries[0][0]) - 1, spectrum5) == 0


def test_count_at_systole(spectrum5):
    x = math.exp(spectrum5.entries[0][0])
    assert geodesic_count(x, spectrum5) == spectrum5.entries[0][1]


def test_count_bounded_by_total(spectrum5):
    assert geodesic_count(1e30, spectrum5) == spectrum5.total_classes()


def test_count_brute_force_agreement(spectrum5):
    for x in (25.0, 100.0, 1000.0):
        brute = sum(m for l, m in spectrum5.entries if math.exp(l) <= x)
        assert geodesic_count(x, spectrum5) == brute


def test_count_domain(spectrum5):
    with pytest.raises(DomainError):
        geodesic_count(0.5, spectrum5)


def test_pgt_table(spectrum5):
    xs = [25.0, 60.0, 100.0]
    rows = pgt_table(spectrum5, xs)
    assert len(rows) == 3
    for x, count, approx, ratio in rows:
        assert count == geodesic_count(x, spectrum5)
        assert approx == pytest.approx(x / math.log(x))
        assert ratio == pytest.approx(count * math.log(x) / x)
    counts = [r[1] for r in rows]
    assert counts == sorted(counts)


def test_pgt_empty():
    sp = _tiny_spectrum()
    assert pgt_table(sp, []) == []


def test_pgt_warns_beyond_horizon():
    sp = _tiny_spectrum()
    with pytest.warns(UserWarning):
        pgt_table(sp, [math.exp(sp.horizon) * 10])


def test_pgt_rejects_small_x(spectrum5):
    with pytest.raises(DomainError):
        pgt_table(spectrum5, [2.0])
