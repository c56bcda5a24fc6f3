from fractions import Fraction

import sympy


def sympy_matrix(rows):
    return sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in rows])


def to_fractions(mat):
    return [[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in mat.row(i)] for i in range(mat.rows)]


def sympy_rank(rows, ncols):
    if not rows or not ncols:
        return 0
    return sympy_matrix(rows).rank()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
