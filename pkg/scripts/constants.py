#!/usr/bin/env python3
"""Numerical constants used by the kernels and by the verification suites.

Every constant is kept as a 30-significant-digit string next to its provenance,
and converted to binary64 once at import time.
"""

from __future__ import annotations

# Provenance tags:
#   dlmf   - NIST Digital Library of Mathematical Functions, tabulated values
#   oeis   - On-Line Encyclopedia of Integer Sequences decimal expansions
#   table  - printed numerical table of the cusp-form special values
#   derived - combination of the constants above, recomputed at 40 digits

EULER_GAMMA_STR = "0.577215664901532860606512090082"  # oeis A001620
LOG_TWO_PI_STR = "1.83787706640934548356065947281"  # oeis A061444
LOG_TWO_STR = "0.693147180559945309417232121458"  # oeis A002162

# zeta(2..16), indexed by the argument; oeis A013661, A002117, A0136{62..75}
ZETA_STR: dict[int, str] = {
    2: "1.64493406684822643647241516665",
    3: "1.20205690315959428539973816151",
    4: "1.08232323371113819151600369654",
    5: "1.03692775514336992633136548646",
    6: "1.01734306198444913971451792979",
    7: "1.00834927738192282683979754985",
    8: "1.00407735619794433937868523851",
    9: "1.00200839282608221441785276923",
    10: "1.00099457512781808533714595890",
    11: "1.00049418860411946455870228253",
    12: "1.00024608655330804829863799805",
    13: "1.00012271334757848914675183653",
    14: "1.00006124813505870482925854511",
    15: "1.00003058823630702049355172851",
    16: "1.00001528225940865187173257149",
}

REFERENCE_STR: dict[str, tuple[str, str]] = {
    # name: (value, provenance)
    "euler_gamma": (EULER_GAMMA_STR, "oeis A001620"),
    "stieltjes_gamma_1": ("-0.0728158454836767248605863758750", "oeis A082633"),
    "stieltjes_gamma_2": ("-0.00969036319287231848453038603521", "oeis A086279"),
    "stieltjes_gamma_3": ("0.00205383442030334586616004654275", "oeis A086280"),
    "zeta_2": (ZETA_STR[2], "oeis A013661"),
    "zeta_half": ("-1.46035450880958681288949915251529", "oeis A059750"),
    "pi_over_4": ("0.785398163397448309615660845820", "oeis A003881"),
    "pi_squared_over_2": ("4.93480220054467930941724549994", "derived 3*zeta(2)"),
    "pi_over_3_sqrt_3": ("0.604599788078072616864692752547", "oeis A073010"),
    "catalan": ("0.915965594177219015054603514932", "oeis A006752"),
    "gamma_plus_2_log_2": ("1.96351002602142347944097633300", "derived gamma + 2 log 2"),
    "log_2": (LOG_TWO_STR, "oeis A002162"),
    "sqrt_pi": ("1.77245385090551602729816748334", "oeis A002161"),
    "e1_at_1": ("0.219383934395520273677163775460", "dlmf 6.2.1 table"),
    # C(2,12) from the 30-term series, evaluated with mpmath at 40 digits
    "delta_c2_30_terms": ("0.0189450490723787186", "derived 40-digit mpmath evaluation, 30 Fourier terms"),
}

# Special values of L(Delta, s) at s = 0: (derivative column, formula column).
PAPER_TABLE_STR: dict[int, tuple[str, str]] = {
    1: ("0.01048627312924115", "0.01048627312924116"),
    2: ("0.01894504907238154", "0.01894525791618929"),
}

# First ten Ramanujan tau values; oeis A000594
TAU_HEAD: tuple[int, ...] = (1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920)

EULER_GAMMA = float(EULER_GAMMA_STR)
LOG_TWO_PI = float(LOG_TWO_PI_STR)
ZETA: dict[int, float] = {n: float(text) for n, text in ZETA_STR.items()}
REFERENCE: dict[str, float] = {name: float(text) for name, (text, _) in REFERENCE_STR.items()}
PAPER_TABLE: dict[int, tuple[float, float]] = {
    n: (float(left), float(right)) for n, (left, right) in PAPER_TABLE_STR.items()
}


def reference_constant(name: str) -> float:
    try:
        return REFERENCE[name]
    except KeyError as exc:
        raise KeyError(f"unknown reference constant: {name}") from exc


def reference_provenance(name: str) -> str:
    return REFERENCE_STR[name][1]
