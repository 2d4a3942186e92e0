"""Length spectra of hyperbolic surfaces and the Euler products over them.

The one built-in surface is the genus-2 regular-octagon (Bolza)
surface: its group is generated by four hyperbolic translations of
equal length whose axes pass through the disk origin at angles k*pi/4.
Primitive conjugacy classes are enumerated as cyclically reduced words
up to a word-length horizon; classes are cyclic-rotation classes of
words merged by trace clustering.  That classification is word-level
(relator-induced duplicate words of complementary lengths inside the
horizon are counted per word class) and the spectrum file discloses it.

Geodesics gamma and gamma^-1 are counted as distinct throughout, the
convention under which the sine factor in the functional equation has
degree 4-4g.
"""
from __future__ import annotations

import math
import os
import tempfile
import warnings
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .laurent import LaurentPoly
from .special import DomainError, SpecialValue

_TRACE_TOL = 1e-9
_LENGTH_MERGE_TOL = 1e-9
_MAX_WORD_LEN = 15  # rotation codes use 4 bits per letter in a 64-bit int

BOLZA_LENGTH = 2.0 * math.acosh(1.0 + math.sqrt(2.0))


@dataclass
class Mat2:
    """Real 2x2 matrix of determinant 1 (renormalized on drift)."""
    a: float
    b: float
    c: float
    d: float

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def renormalized(self) -> "Mat2":
        det = self.det()
        if abs(det - 1.0) <= 1e-13:
            return self
        r = 1.0 / math.sqrt(det)
        return Mat2(self.a * r, self.b * r, self.c * r, self.d * r)

    def trace(self) -> float:
        return self.a + self.d

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @classmethod
    def from_array(cls, m: np.ndarray) -> "Mat2":
        return cls(float(m[0, 0]), float(m[0, 1]),
                   float(m[1, 0]), float(m[1, 1])).renormalized()

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d).renormalized()

    def inverse(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a).renormalized()


@dataclass
class FuchsianGroup:
    generators: List[Mat2]
    label: str

    def __post_init__(self):
        for i, g in enumerate(self.generators):
            if abs(g.trace()) <= 2.0:
                raise ValueError(
                    f"generator {i} of {self.label!r} is not hyperbolic "
                    f"(|trace| = {abs(g.trace())})")


@dataclass(frozen=True)
class PrimitiveGeodesic:
    length: float
    norm: float
    trace_abs: float
    word: str = ""


@dataclass
class LengthSpectrum:
    entries: List[Tuple[float, int]]
    genus: int
    source: str
    horizon: float

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError(f"genus must be >= 2, got {self.genus}")
        prev = None
        for ell, mult in self.entries:
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1 at length {ell}")
            if prev is not None and ell - prev <= _LENGTH_MERGE_TOL:
                raise ValueError(
                    f"lengths must increase by more than {_LENGTH_MERGE_TOL}: "
                    f"{prev} then {ell}")
            prev = ell
        if self.entries and self.horizon > self.entries[-1][0] + 1e-12:
            raise ValueError("completeness horizon exceeds max recorded length")

    def total_classes(self) -> int:
        return sum(m for _, m in self.entries)


def _rotation(phi: float) -> Mat2:
    return Mat2(math.cos(phi), math.sin(phi), -math.sin(phi), math.cos(phi))


def bolza_group() -> FuchsianGroup:
    """Side-pairing generators of the regular-octagon genus-2 surface.

    Each generator translates by 2*arccosh(1+sqrt(2)) along a geodesic
    through the origin at tangent angle k*pi/4 (k = 0..3); a rotation
    matrix R(phi) turns the tangent space at the base point by 2*phi,
    hence the conjugating angle k*pi/8.
    """
    half = math.acosh(1.0 + math.sqrt(2.0))
    trans = Mat2(math.exp(half), 0.0, 0.0, math.exp(-half))
    gens = []
    for k in range(4):
        rot = _rotation(k * math.pi / 8)
        gens.append(rot @ trans @ rot.inverse())
    return FuchsianGroup(gens, "bolza-octagon")


def _letter_matrices(group: FuchsianGroup) -> np.ndarray:
    """Alphabet matrices: letter 2i is generator i, letter 2i+1 its inverse."""
    mats = []
    for g in group.generators:
        mats.append(g.as_array())
        mats.append(g.inverse().as_array())
    return np.array(mats)


def _proper_divisors(n: int) -> List[int]:
    return [d for d in range(1, n) if n % d == 0]


def _classify_frontier(words: np.ndarray, mats: np.ndarray) -> np.ndarray:
    """Per-class |trace| for the primitive cyclic word classes at one length.

    Takes the full freely-reduced frontier at word length n, keeps the
    cyclically reduced words, drops identity words (relators) and
    proper powers, aborts on any elliptic non-identity word, and
    returns one |trace| per distinct cyclic-rotation class.
    """
    n = words.shape[1]
    if n >= 2:
        cyc = words[:, 0] != (words[:, -1] ^ 1)
        words = words[cyc]
        mats = mats[cyc]
    if words.shape[0] == 0:
        return np.empty(0)
    traces = mats[:, 0, 0] + mats[:, 1, 1]
    abs_tr = np.abs(traces)
    low = abs_tr <= 2.0 + _TRACE_TOL
    if np.any(low):
        eye = np.eye(2)
        bad_mats = mats[low]
        signs = np.sign(bad_mats[:, 0, 0])[:, None, None]
        dev = np.max(np.abs(bad_mats - signs * eye), axis=(1, 2))
        if np.any(dev > 1e-6):
            i = int(np.argmax(dev))
            raise RuntimeError(
                "non-identity word with |trace| <= 2 encountered "
                f"(|trace|={abs_tr[low][i]}, deviation from identity "
                f"{dev[i]}): the group is not cocompact torsion-free "
                "or the matrices have drifted")
        words = words[~low]
        abs_tr = abs_tr[~low]
    if words.shape[0] == 0:
        return np.empty(0)

    weights = (1 << (4 * np.arange(n - 1, -1, -1))).astype(np.int64)
    code0 = words.astype(np.int64) @ weights
    canonical = code0.copy()
    periodic = np.zeros(words.shape[0], dtype=bool)
    divisors = set(_proper_divisors(n))
    for r in range(1, n):
        rotated = np.concatenate([words[:, r:], words[:, :r]], axis=1)
        code_r = rotated.astype(np.int64) @ weights
        np.minimum(canonical, code_r, out=canonical)
        if r in divisors:
            periodic |= code_r == code0
    # merge each class with its inverse class so that both orientations
    # carry bit-identical traces (a word and its inverse can otherwise
    # differ by float noise and split across a cluster boundary); each
    # unoriented class stands for exactly 2 oriented geodesics, since
    # no element of a surface group is conjugate to its own inverse
    inv_words = words[:, ::-1] ^ 1
    inv_canonical = inv_words.astype(np.int64) @ weights
    for r in range(1, n):
        rotated = np.concatenate([inv_words[:, r:], inv_words[:, :r]], axis=1)
        np.minimum(inv_canonical, rotated.astype(np.int64) @ weights,
                   out=inv_canonical)
    np.minimum(canonical, inv_canonical, out=canonical)
    keep = ~periodic
    canonical = canonical[keep]
    abs_tr = abs_tr[keep]
    _, first = np.unique(canonical, return_index=True)
    return abs_tr[np.sort(first)]


def enumerate_spectrum(group: FuchsianGroup, max_word_len: int,
                       threads: int = 1) -> LengthSpectrum:
    """Breadth-first word enumeration up to max_word_len, classified.

    The result is deterministic and independent of the threads knob
    (the evaluation is vectorized; the knob is accepted for interface
    stability and validated only).
    """
    if max_word_len < 1:
        raise ValueError(f"max_word_len must be >= 1, got {max_word_len}")
    if max_word_len > _MAX_WORD_LEN:
        raise ValueError(f"max_word_len is capped at {_MAX_WORD_LEN}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")

    letters = _letter_matrices(group)
    n_letters = letters.shape[0]

    words = np.arange(n_letters, dtype=np.int8)[:, None]
    mats = letters.copy()
    lengths_per_n = []
    for n in range(1, max_word_len + 1):
        if n > 1:
            blocks_w = []
            blocks_m = []
            for letter in range(n_letters):
                mask = words[:, -1] != (letter ^ 1)
                sub_w = words[mask]
                col = np.full((sub_w.shape[0], 1), letter, dtype=np.int8)
                blocks_w.append(np.concatenate([sub_w, col], axis=1))
                blocks_m.append(mats[mask] @ letters[letter])
            words = np.concatenate(blocks_w, axis=0)
            mats = np.concatenate(blocks_m, axis=0)
            det = mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]
            drift = np.abs(det - 1.0) > 1e-13
            if np.any(drift):
                mats[drift] /= np.sqrt(det[drift])[:, None, None]
        abs_tr = _classify_frontier(words, mats)
        lengths_per_n.append(2.0 * np.arccosh(abs_tr / 2.0))

    horizon = float(np.min(lengths_per_n[-1])) if lengths_per_n[-1].size else 0.0
    all_lengths = np.sort(np.concatenate(lengths_per_n))
    entries: List[Tuple[float, int]] = []
    for ell in all_lengths:
        if entries and ell - entries[-1][0] <= _LENGTH_MERGE_TOL:
            entries[-1] = (entries[-1][0], entries[-1][1] + 2)
        else:
            entries.append((float(ell), 2))
    source = (f"{group.label} word-enumeration L={max_word_len}; "
              "conjugacy=cyclic-words+trace-clustering (word-level)")
    return LengthSpectrum(entries=entries, genus=2, source=source,
                          horizon=horizon)


# -- persistence ---------------------------------------------------------

class SpectrumFormatError(ValueError):
    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.lineno = lineno


def save_spectrum(sp: LengthSpectrum, path: str) -> None:
    """Write the ASCII spectrum file atomically (temp file + rename)."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".spectrum-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(f"# genus={sp.genus}\n")
            fh.write(f"# source={sp.source}\n")
            fh.write(f"# horizon={sp.horizon:.16e}\n")
            fh.write("# convention=gamma-and-inverse-distinct\n")
            for ell, mult in sp.entries:
                fh.write(f"{ell:.16e} {mult}\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_spectrum(path: str) -> LengthSpectrum:
    genus = None
    source = ""
    horizon = None
    entries: List[Tuple[float, int]] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" not in body:
                    continue
                key, value = body.split("=", 1)
                key = key.strip()
                if key == "genus":
                    genus = int(value)
                elif key == "source":
                    source = value.strip()
                elif key == "horizon":
                    horizon = float(value)
                continue
            parts = line.split()
            if len(parts) != 2:
                raise SpectrumFormatError(path, lineno,
                                          "expected '<length> <multiplicity>'")
            try:
                ell = float(parts[0])
                mult = int(parts[1])
            except ValueError as exc:
                raise SpectrumFormatError(path, lineno, str(exc)) from None
            if entries and ell <= entries[-1][0]:
                raise SpectrumFormatError(path, lineno,
                                          "lengths must be strictly increasing")
            entries.append((ell, mult))
    if genus is None:
        raise SpectrumFormatError(path, 0, "missing '# genus=' header")
    if horizon is None:
        raise SpectrumFormatError(path, 0, "missing '# horizon=' header")
    return LengthSpectrum(entries=entries, genus=genus, source=source,
                          horizon=horizon)


# -- Euler products ------------------------------------------------------

# Deep enough that no class's leading (n = 0) factor is ever dropped at
# moderate s; otherwise the ratio selberg_Z(s+1)/selberg_Z(s) loses classes
# that euler_zeta keeps and the telescoping identity degrades to ~1e-12.
_INNER_CUTOFF = 1e-45


def selberg_Z(s: float, sp: LengthSpectrum) -> SpecialValue:
    """Double Euler product prod_P prod_n (1 - N(P)^-(s+n)), in log space.

    The inner product truncates when the term drops below 1e-17; only
    that truncation is covered by the error estimate (the spectrum
    itself is finite, disclosed via the completeness horizon).
    """
    if s <= 1.0 + 1e-3:
        raise DomainError(f"selberg_Z requires s > 1 + 1e-3, got s={s}")
    terms = []
    err = 0.0
    for ell, mult in sp.entries:
        n = 0
        while True:
            q = math.exp(-ell * (s + n))
            if q < _INNER_CUTOFF:
                err += mult * q / (1.0 - math.exp(-ell))
                break
            terms.append(mult * math.log1p(-q))
            n += 1
    v = math.exp(math.fsum(terms))
    return SpecialValue(v, abs(v) * err)


def euler_zeta(s: float, sp: LengthSpectrum) -> SpecialValue:
    """Simple Euler product prod_P (1 - N(P)^-s)^-1, in log space."""
    if s <= 1.0 + 1e-3:
        raise DomainError(f"euler_zeta requires s > 1 + 1e-3, got s={s}")
    v = math.exp(-math.fsum(
        mult * math.log1p(-math.exp(-ell * s)) for ell, mult in sp.entries))
    return SpecialValue(v, abs(v) * 1e-15 * max(1, len(sp.entries)))


def zeta_motive_numeric(f: LaurentPoly, s: float,
                        sp: LengthSpectrum) -> SpecialValue:
    """prod_k euler_zeta(s - k)^a(k) inside the common convergence region."""
    for k in f.support():
        if s - k <= 1.0 + 1e-3:
            raise DomainError(
                f"motive factor k={k} needs s - k > 1 + 1e-3, "
                f"got s - k = {s - k}")
    log_total = 0.0
    err = 0.0
    for k, a in f.coeffs.items():
        part = euler_zeta(s - k, sp)
        log_total += a * math.log(part.value)
        err += abs(a) * part.abs_err_estimate / part.value
    v = math.exp(log_total)
    return SpecialValue(v, abs(v) * err)


# -- counting ------------------------------------------------------------

def geodesic_count(x: float, sp: LengthSpectrum) -> int:
    """Number of primitive classes with norm exp(length) <= x."""
    if x < 1.0:
        raise DomainError(f"geodesic_count requires x >= 1, got x={x}")
    bound = math.log(x)
    return sum(mult for ell, mult in sp.entries if ell <= bound)


def pgt_table(sp: LengthSpectrum,
              xs: Sequence[float]) -> List[Tuple[float, int, float, float]]:
    """Rows (x, count, x/log x, count*log x / x) for the counting function."""
    rows = []
    for x in xs:
        if x <= math.e:
            raise DomainError(f"pgt_table requires x > e, got x={x}")
        if math.log(x) > sp.horizon:
            warnings.warn(
                f"x={x} lies beyond the completeness horizon "
                f"exp({sp.horizon:.6f}); the count is a lower bound",
                stacklevel=2)
        count = geodesic_count(x, sp)
        approx = x / math.log(x)
        rows.append((x, count, approx, count * math.log(x) / x))
    return rows
