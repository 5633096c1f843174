"""The Weil representation r' on tabulated Schwartz functions, and the right action."""
from __future__ import annotations

from fractions import Fraction
from typing import Union

from ..errors import ContextError
from ..padic import Mat2
from .blocks import to_table
from .models import (
    ProductTerm,
    SchwartzFunction,
    TableFunction,
    TranslatedFunction,
    WeilLetter,
    WeilWord,
)
from .tables import dilate_pair, fourier_pair, phase_pair, rational_valuation, scale_pair, twist_u

Number = Union[int, Fraction]


def n_word(beta: Number) -> WeilWord:
    return WeilWord((WeilLetter("n", Fraction(beta)),))


def omega_word() -> WeilWord:
    return WeilWord((WeilLetter("w"),))


def a_word(alpha: Number) -> WeilWord:
    """diag(alpha, 1/alpha)."""
    return WeilWord((WeilLetter("a", Fraction(alpha)),))


def d_word(delta: Number) -> WeilWord:
    """diag(1, delta)."""
    return WeilWord((WeilLetter("d", Fraction(delta)),))


def minus_one_word() -> WeilWord:
    return a_word(-1)


def n_lower_word(x: Number) -> WeilWord:
    """(1 0; x 1) = -omega n(-x) omega."""
    return minus_one_word() @ omega_word() @ n_word(-Fraction(x)) @ omega_word()


def diag_word(alpha: Number) -> WeilWord:
    """diag(alpha, 1) = a(alpha) d(alpha)."""
    return a_word(alpha) @ d_word(alpha)


def word_for_matrix(g: Mat2) -> WeilWord:
    """Bruhat word for g: n(a/c) omega a(-c) n(d/c) d(det) when c != 0, else a(a) n(b/a) d(det)."""
    a, b, c, d = (x.to_fraction() for x in (g.a, g.b, g.c, g.d))
    det = a * d - b * c
    if det == 0:
        raise ContextError("singular matrix")
    b, d = b / det, d / det
    if c == 0:
        return a_word(a) @ n_word(b / a) @ d_word(det)
    return n_word(a / c) @ omega_word() @ a_word(-c) @ n_word(d / c) @ d_word(det)


def _apply_letter(letter: WeilLetter, term: ProductTerm) -> ProductTerm:
    p = term.pair14.p
    pair14, pair23 = term.pair14, term.pair23
    if letter.name == "n":
        return ProductTerm(phase_pair(pair14, letter.param, 1), phase_pair(pair23, letter.param, -1))
    if letter.name == "w":
        return ProductTerm(fourier_pair(pair14, 1), fourier_pair(pair23, -1))
    if letter.name == "a":
        alpha = letter.param
        if alpha == 0:
            raise ContextError("a(0) is not invertible")
        # |alpha|^2 split between the two factors
        factor = float(p) ** (-rational_valuation(p, alpha))
        return ProductTerm(scale_pair(dilate_pair(pair14, alpha), factor), scale_pair(dilate_pair(pair23, alpha), factor))
    if letter.name == "d":
        delta = letter.param
        return ProductTerm(twist_u(pair14, delta), twist_u(pair23, delta))
    raise ContextError(f"unknown Weil generator {letter.name!r}")


def weil_apply(word: Union[WeilWord, Mat2], f: SchwartzFunction) -> SchwartzFunction:
    """r'(word) f; the rightmost letter acts first."""
    if isinstance(word, Mat2):
        word = word_for_matrix(word)
    if isinstance(f, TranslatedFunction):
        # r' commutes with the right action
        return TranslatedFunction(weil_apply(word, f.base), f.g, frame=f.frame)
    table = to_table(f)
    terms = list(table.terms)
    for letter in reversed(word.letters):
        terms = [_apply_letter(letter, term) for term in terms]
    if word.gamma != 1:
        terms = [ProductTerm(scale_pair(term.pair14, word.gamma), term.pair23) for term in terms]
    return TableFunction(table.p, terms, frame=table.frame, label=table.label)


def right_translate(f: SchwartzFunction, g: Mat2) -> TranslatedFunction:
    """(x, u) -> f(x g, u / det g)."""
    return TranslatedFunction(f, g)


def with_frame(f: SchwartzFunction, h: Mat2) -> SchwartzFunction:
    """x -> f(h^-1 x) for h in SL2(O); commutes with r'."""
    det = h.det()
    if det.is_zero_ball or not (det - 1).valuation_at_least(det.prec):
        raise ContextError("frames must have determinant 1")
    frame = h if f.frame is None else h @ f.frame
    if isinstance(f, TranslatedFunction):
        return TranslatedFunction(f.base, f.g, frame=frame)
    table = to_table(f)
    return TableFunction(table.p, table.terms, frame=frame, label=table.label)


__all__ = [
    "a_word",
    "d_word",
    "diag_word",
    "minus_one_word",
    "n_lower_word",
    "n_word",
    "omega_word",
    "right_translate",
    "weil_apply",
    "with_frame",
    "word_for_matrix",
]
