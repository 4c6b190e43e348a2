"""Words in the braid group B_n and the explicit word families of the toolkit.

Conventions
-----------
A word is stored as a sequence of nonzero integers: letter ``+i`` is the
generator ``sigma_i`` (the strand entering position ``i`` crosses *over*
the strand at ``i+1``, a right-handed crossing) and ``-i`` its inverse.
Letters act left to right, i.e. the word is read down the page in braid
diagrams, and the underlying permutation composes in that order.

Text format: ``Bn: e1 e2 ... ek`` with whitespace-separated signed
integers, e.g. ``B3: -1 -1 2 2``.  ``parse_braid`` and ``format_braid``
round-trip bit-exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from fslinks.errors import (
    BraidParseError,
    DomainError,
    NonHomogeneousError,
    NonIntegerGenusError,
)


@dataclass(frozen=True)
class BraidWord:
    """A word in B_n: ``strands`` = n, ``letters`` = signed generator indices."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise DomainError(f"strand count must be positive, got {self.strands}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for e in self.letters:
            if e == 0 or not (1 <= abs(e) <= self.strands - 1):
                raise DomainError(
                    f"letter {e} out of range for B_{self.strands}"
                )

    def length(self) -> int:
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-e for e in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise DomainError("cannot concatenate words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def __str__(self) -> str:
        return format_braid(self)


@dataclass(frozen=True)
class Permutation:
    """Bijection on {1..n}, stored as the image tuple (1-indexed)."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if sorted(self.image) != list(range(1, n + 1)):
            raise DomainError(f"not a bijection on 1..{n}: {self.image}")

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def is_identity(self) -> bool:
        return all(self.image[i] == i + 1 for i in range(self.size))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Cycle decomposition, each cycle led by and sorted on its least element."""
        seen = [False] * (self.size + 1)
        out = []
        for start in range(1, self.size + 1):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self(start)
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self(j)
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_count(self) -> int:
        return len(self.cycles())


@dataclass(frozen=True)
class FiberData:
    """Fibered surface of a homogeneous braid closure: genus and boundary count."""

    genus: int
    boundary: int

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 1:
            raise DomainError(f"invalid fiber data ({self.genus}, {self.boundary})")

    def __str__(self) -> str:
        return f"Sigma_{{{self.genus},{self.boundary}}}"


# ---------------------------------------------------------------------------
# basic operations


def permutation_of(b: BraidWord) -> Permutation:
    """Underlying permutation: transpositions (i, i+1) applied left to right."""
    img = list(range(1, b.strands + 1))
    for e in b.letters:
        i = abs(e)
        # positions i, i+1 swap; track where each starting strand ends up
        img[i - 1], img[i] = img[i], img[i - 1]
    # img currently maps positions to the strand occupying them at the bottom;
    # invert so image[s-1] is the final position of the strand starting at s.
    final = [0] * b.strands
    for pos, strand in enumerate(img, start=1):
        final[strand - 1] = pos
    return Permutation(tuple(final))


def is_pure(b: BraidWord) -> bool:
    """True iff the underlying permutation is the identity."""
    return permutation_of(b).is_identity()


def closure_component_count(b: BraidWord) -> int:
    """Number of components of the braid closure = cycles of the permutation."""
    return permutation_of(b).cycle_count()


def is_homogeneous(b: BraidWord) -> bool:
    """True iff every generator index occurs with a single sign."""
    sign_seen: dict[int, int] = {}
    for e in b.letters:
        i = abs(e)
        s = 1 if e > 0 else -1
        if sign_seen.setdefault(i, s) != s:
            return False
    return True


def generators_all_present(b: BraidWord) -> bool:
    """True iff each index 1..n-1 occurs in the word (with either sign)."""
    used = {abs(e) for e in b.letters}
    return used == set(range(1, b.strands))


def seifert_genus(b: BraidWord) -> FiberData:
    """Fibered surface of the closure of a homogeneous braid.

    Seifert's algorithm on a homogeneous closure gives a fiber surface of
    genus ``(2 + C - n_strands - components) / 2`` where ``C`` is the
    crossing count of the word.
    """
    if not b.letters:
        raise NonHomogeneousError("empty word has no fibered-surface data here")
    if not is_homogeneous(b):
        raise NonHomogeneousError(f"word is not homogeneous: {format_braid(b)}")
    comps = closure_component_count(b)
    num = 2 + b.length() - b.strands - comps
    if num % 2 != 0 or num < 0:
        raise NonIntegerGenusError(
            f"genus formula gave {num}/2 for {format_braid(b)}"
        )
    return FiberData(num // 2, comps)


def embed_with_trivial_strands(b: BraidWord, p: int) -> BraidWord:
    """Same letters viewed in B_{n+p-1}; the closure gains p-1 split unknots."""
    if p < 2:
        raise DomainError(f"p must be >= 2, got {p}")
    return BraidWord(b.strands + p - 1, b.letters)


# ---------------------------------------------------------------------------
# text format


_HEADER = re.compile(r"^\s*B(\d+)\s*:")


def parse_braid(text: str) -> BraidWord:
    """Parse ``Bn: e1 e2 ... ek``; raises BraidParseError with position."""
    m = _HEADER.match(text)
    if not m:
        raise BraidParseError("expected header like 'B3:'", 0)
    strands = int(m.group(1))
    letters = []
    pos = m.end()
    rest = text[pos:]
    for tok in re.finditer(r"\S+", rest):
        word = tok.group(0)
        at = pos + tok.start()
        try:
            e = int(word)
        except ValueError:
            raise BraidParseError(f"bad letter {word!r}", at) from None
        if e == 0 or abs(e) > strands - 1:
            raise BraidParseError(f"letter {e} out of range for B_{strands}", at)
        letters.append(e)
    return BraidWord(strands, tuple(letters))


def format_braid(b: BraidWord) -> str:
    """Serialize to the text grammar; exact inverse of parse_braid."""
    body = " ".join(str(e) for e in b.letters)
    return f"B{b.strands}:" + (f" {body}" if body else "")


# ---------------------------------------------------------------------------
# word families
#
# Building blocks: palindromic conjugate "clasp" blocks.  Each descends from
# generator j, hits a double crossing near the bottom of the braid, and
# climbs back up.  All four are pure (palindrome around an even core).


def _block_a(j: int) -> list[int]:
    # sigma_j ... sigma_2 sigma_1^2 sigma_2^-1 sigma_3 ... sigma_j
    return list(range(j, 1, -1)) + [1, 1, -2] + list(range(3, j + 1))


def _block_b(j: int) -> list[int]:
    # sigma_j ... sigma_3 sigma_2^2 sigma_3 ... sigma_j
    return list(range(j, 2, -1)) + [2, 2] + list(range(3, j + 1))


def _block_c(j: int) -> list[int]:
    # sigma_j ... sigma_4 sigma_3^2 sigma_4 ... sigma_j
    return list(range(j, 3, -1)) + [3, 3] + list(range(4, j + 1))


def _block_d(j: int) -> list[int]:
    # sigma_j ... sigma_3 sigma_2^2 sigma_3^-1 sigma_4 ... sigma_j
    return list(range(j, 2, -1)) + [2, 2, -3] + list(range(4, j + 1))


def make_bk(k: int) -> BraidWord:
    """The braid b_k whose braided link has volume 2k*v8.

    b_1 lives in B_3; for k >= 2 the word lives in B_{k+3}.  The k even
    and k odd cases use different clasp products; the odd words (k >= 3)
    carry a leading lone sigma_1, so their underlying permutation is the
    transposition (1 2) and the closure has k+2 components.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if k == 1:
        return BraidWord(3, (-1, -1, 2, 2))
    letters: list[int] = []
    if k % 2 == 0:
        m = k // 2
        for i in range(1, m + 1):
            letters += _block_a(2 * i + 1) + _block_b(2 * i + 2)
    else:
        m = (k + 1) // 2
        letters += [1] + _block_a(3)
        for i in range(2, m + 1):
            letters += _block_b(2 * i) + _block_a(2 * i + 1)
    return BraidWord(k + 3, tuple(letters))


def make_omega(m: int) -> BraidWord:
    """The pure braid omega_m in B_{m-1} (a mapping class of a sphere with m holes).

    Five cases: omega_4 = b_1; omega_m = b_{m-4} for even m >= 6; omega_5 and
    omega_7 are omega_4 and omega_6 with one extra trivial strand (letters
    unchanged); omega_9 is an explicit four-clasp word; and odd m >= 11
    extends omega_9 by clasp pairs.
    """
    if m < 4:
        raise DomainError(f"m must be >= 4, got {m}")
    if m == 4:
        return make_bk(1)
    if m % 2 == 0:
        return make_bk(m - 4)
    if m in (5, 7):
        prev = make_omega(m - 1)
        return BraidWord(prev.strands + 1, prev.letters)
    letters = _block_c(4) + _block_b(5) + _block_a(6) + _block_d(7)
    s = (m - 7) // 2
    for i in range(2, s + 1):
        letters += _block_c(4 + 2 * i) + _block_d(5 + 2 * i)
    return BraidWord(m - 1, tuple(letters))


def make_Lnm(n: int, m: int) -> BraidWord:
    """Homogeneous pure-ish braid whose closure is the n-component link L_{n,m}.

    Starts with the Borromean word (sigma_2^-1 sigma_1)^3 on strands 1-3,
    then a clasp chain with a 2m-fold negative twist box.  Contract: the
    word is homogeneous, the closure has n components, the length is
    2m+4n-8 for n >= 5 (2m+11 with 5 strands for n = 4), it contains the
    subword sigma_3^2 sigma_4^-2, and the fiber genus comes out m+n-3
    (m+2 for n = 4).
    """
    if n < 4 or m < 1:
        raise DomainError(f"need n >= 4 and m >= 1, got ({n}, {m})")
    borromean = [-2, 1] * 3
    if n == 4:
        letters = borromean + [3, 3] + [-4] * (2 * m - 1) + [3, 3, -4, -4]
        return BraidWord(5, tuple(letters))
    letters = borromean + [3, 3] + [-4] * (2 * m) + [3, 3, -4, -4]
    for j in range(6, n + 1):
        s_lo = 1 if (j - 2) % 2 == 1 else -1
        s_hi = 1 if (j - 1) % 2 == 1 else -1
        letters += [s_lo * (j - 2)] * 2 + [s_hi * (j - 1)] * 2
    return BraidWord(n, tuple(letters))


def named_constant_braids() -> Mapping[str, BraidWord]:
    """Catalog of fixed braid words: fibered-surface table rows and one extra.

    The two L6a4 entries are the two mirror Borromean words; the braid
    under ``remark-closed-braid`` is the B_6 word whose plain closure
    (no axis) still satisfies the volume conjecture.
    """
    return {
        "L6a4": BraidWord(3, (1, -2) * 3),
        "L6a4-mirror": BraidWord(3, (-1, 2) * 3),
        "L8n7": BraidWord(4, (1, -2, -2, 1, -3, -2, -2, -3)),
        "L10n87": BraidWord(3, (1, 1, 1, 2, 2, 1, 1, 2, 2, 1)),
        "L10n97": BraidWord(4, (-1, -1, -1, -2, -2, -1, -3, -2, -2, -3)),
        "L10n108": BraidWord(4, (-1, -2) * 3 + (3, -2, -2, 3)),
        "L11n385": BraidWord(4, (-1, -2) * 3 + (3, -2, -2, 3, -2)),
        "remark-closed-braid": BraidWord(
            6,
            (4, 3, 2, 1, 1, 2, -3, 4) + (5, 4, 3, 3, 4, 5)
            + (1, 2, 3, 4, 5, 5, 4, 3, 2, 1),
        ),
    }


#: Rows of the fibered-surface table: name -> (braid key, expected fiber).
FIBER_TABLE: Mapping[str, FiberData] = {
    "L6a4": FiberData(1, 3),
    "L6a4-mirror": FiberData(1, 3),
    "L8n7": FiberData(1, 4),
    "L10n87": FiberData(3, 3),
    "L10n97": FiberData(2, 4),
    "L10n108": FiberData(2, 4),
    "L11n385": FiberData(3, 3),
}
