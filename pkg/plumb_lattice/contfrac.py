"""Negative (Hirzebruch-Jung) continued fractions and the Riemenschneider dual."""
from __future__ import annotations
from typing import List, Sequence
from .schema import BlockForm, Fraction, NegCF


def cf_expand(f: Fraction) -> NegCF:
    """
    Expand p/q as a negative continued fraction.

    Uses the greedy recursion a = ceil(p/q), (p, q) -> (q, a*q - p), which gives
    the unique expansion with every coefficient at least two.

    :param f: The fraction to expand
    :type f: Fraction
    :return: Coefficients [a_1, ..., a_n] with p/q = a_1 - 1/(a_2 - ...)
    :rtype: NegCF
    """
    p, q = f.p, f.q
    coeffs: List[int] = []
    while q:
        a = -(-p // q)
        coeffs.append(a)
        p, q = q, a * q - p
    return NegCF(coeffs=tuple(coeffs))


def cf_eval(cf: NegCF) -> Fraction:
    """
    Evaluate [a_1, ..., a_n]^- exactly.

    :param cf: Continued fraction to evaluate
    :type cf: NegCF
    :return: The reduced value p/q
    :rtype: Fraction
    """
    num, den = cf.coeffs[-1], 1
    for a in reversed(cf.coeffs[:-1]):
        num, den = a * num - den, num
    # consecutive continuants are coprime, and a_i >= 2 keeps num > den > 0
    assert num > den > 0, f"non-positive intermediate value in {cf}"
    return Fraction(p=num, q=den)


def block_form(cf: NegCF) -> BlockForm:
    """Split a continued fraction into runs of twos separated by entries >= 3."""
    twos, bigs, run = [], [], 0
    for a in cf.coeffs:
        if a == 2:
            run += 1
        else:
            twos.append(run)
            bigs.append(a)
            run = 0
    twos.append(run)
    return BlockForm(twos=tuple(twos), bigs=tuple(bigs))


def from_block_form(bf: BlockForm) -> NegCF:
    coeffs: List[int] = [2] * bf.twos[0]
    for b, a in zip(bf.bigs, bf.twos[1:]):
        coeffs.append(b)
        coeffs.extend([2] * a)
    return NegCF(coeffs=tuple(coeffs))


def from_adjusted(adjusted: Sequence[int]) -> NegCF:
    """
    Turn adjusted weights back into weights by adding each vertex's degree.

    [c_1, ..., c_l]' = [c_1 + 1, c_2 + 2, ..., c_{l-1} + 2, c_l + 1]^-; a single
    entry has degree zero and is returned unchanged.

    :param adjusted: Adjusted weights along one chain
    :type adjusted: Sequence[int]
    :return: The continued fraction with those adjusted weights
    :rtype: NegCF
    """
    n = len(adjusted)
    if n == 1:
        return NegCF(coeffs=(adjusted[0],))
    return NegCF(coeffs=tuple(c + (1 if i in (0, n - 1) else 2) for i, c in enumerate(adjusted)))


def riemenschneider_dual(cf: NegCF) -> NegCF:
    """
    Continued fraction of p/(p - q) computed from that of p/q by the point rule.

    With cf = ([2]^{a_0}, b_1, [2]^{a_1}, ..., b_k, [2]^{a_k}) the dual has adjusted
    weights (a_0 + 1, [0]^{b_1 - 3}, a_1 + 1, ..., [0]^{b_k - 3}, a_k + 1).

    :param cf: Continued fraction of p/q
    :type cf: NegCF
    :return: Continued fraction of p/(p - q)
    :rtype: NegCF
    """
    bf = block_form(cf)
    adjusted: List[int] = [bf.twos[0] + 1]
    for b, a in zip(bf.bigs, bf.twos[1:]):
        adjusted.extend([0] * (b - 3))
        adjusted.append(a + 1)
    return from_adjusted(adjusted)


def parse_cf(text: str) -> NegCF:
    """Parse ``"a1,a2,..."`` (brackets and spaces tolerated)."""
    body = text.strip().strip("[]")
    return NegCF(coeffs=tuple(int(t) for t in body.replace(" ", "").split(",") if t))
