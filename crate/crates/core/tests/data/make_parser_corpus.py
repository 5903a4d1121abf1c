"""Regenerates parser_corpus.tsv.

Expected renders are computed with sympy (expand, then graded-lex ordering
with x1 > x2 > ...); error spans are located by searching the input for the
offending token. Neither path uses the Rust parser.

    python3 make_parser_corpus.py > parser_corpus.tsv
"""

import re
import sympy

VALID = [
    "x1^2 - 4 = 0",
    "(2*x1 - 1)^2 = 0 @arity=2",
    "x1*x2 = 5",
    "0 = 0",
    "x1 = 0",
    "x1 = x1",
    "x3 - x3 = 0",
    "x1 + x2 + x3 = 1",
    "x2*x1 - 1 - x3^2 - x4^2 - x5^2 - x6^2 = 0",
    "(x1 + x2)^2 = 0",
    "(x1 - x2)^3 = 0",
    "x1^2 + 1 = 0",
    "x1^2 - 2 = 0",
    "2*x1 - 1 = 0",
    "3*x1 + 6 = 0",
    "-x1 = 3",
    "-x1^2 = -4",
    "- - x1 = 1",
    "+x1 = 2",
    "x1*(x1 - 1) = 0",
    "x1*(x1 - 1)*(x1 + 1) = 0",
    "(x1 - 1)*(x1 - 2)*(x1 - 3)*(x1 - 4)*(x1 - 5) = 0",
    "x1^2 + x2^2 = x3^2",
    "x1^3 + x2^3 = x3^3",
    "x1^2 - 2*x2^2 = 1",
    "x1^2 - 61*x2^2 = 1",
    "x2^2 = x1^3 - x1",
    "x2^2 = x1^3 + 17",
    "4*x1^2 - 4*x1 + 1 = 0",
    "4*x1^2 - 4*x1 + 1 = 0 @arity=1",
    "4*x1^2 - 4*x1 + 1 = 0 @arity=3",
    "x1 = 0 @arity=5",
    "0 = 0 @arity=4",
    "7 = 7",
    "1 = 0",
    "x1^0 = 1",
    "x1^1 = 0",
    "2^3 = x1",
    "(2)^2*x1 = 0",
    "x10 = 1",
    "x1*x10 = x2",
    "(x1 + 1)^4 = 0",
    "x1*x2*x3 - 1 = 0",
    "x3*x2*x1 = x1*x2*x3",
    "x2^2*x1 + x1^2*x2 = 0",
    "x1^2*x2^2 - x1*x2 + 1 = 0",
    "(x1 - x2)*(x1 + x2) = 0",
    "x1 - 2*x2 + 3*x3 - 4*x4 = 5",
    "100000000000000000000*x1 = 1",
    "x1 = -100000000000000000000",
    "((x1)) = ((1))",
    "(x1 + (x2 - (x3 + 1))) = 0",
    "2*(x1 + x2) - 2*x1 = 0",
    "x1*x1*x1 = x1^3",
    "x1^2*x1^3 = 0",
    "(x1^2)^3 = 1",
    "x2 = 0",
    "x2^2 - x1 = 0",
    "3*x1 - 3 = 0",
    "6*x1^2 - 9*x1 + 3 = 0",
    "-(x1 - 1) = 0",
    "-(x1*x2) = x3",
    "x1 - x2 = x2 - x1",
    "(x1 + x2 + x3)^2 = 1",
    "x1^2 + x2^2 + x3^2 + x4^2 = 7",
    "x1*x2 - x3*x4 = 0 @arity=6",
    "x1^5 - x1 = 0",
    "(x1 - 1)^2 + (x2 - 2)^2 = 0",
    "x1^2 - 9 = 0 @arity=2",
    "x1^2 + 10 = 0 @arity=2",
    "  x1   *   x2   =   5   ",
    "x1*x2=5@arity=3",
    "x1 * x2 = 5 @ arity = 3",
    "0*x1 = 0",
    "0*x5 + x1 = 0",
]

# (input, code, offending substring, occurrence) -- span is the occurrence's
# byte range; an empty substring means "end of input".
ERRORS = [
    ("x1 = 1/2", "rational-constant", "/", 0),
    ("2.5*x1 = 0", "rational-constant", "2.5", 0),
    ("x1 = 0.5", "rational-constant", "0.5", 0),
    ("x1^1.5 = 0", "fractional-exponent", "1.5", 0),
    ("x1^-2 = 0", "negative-exponent", "-2", 0),
    ("x1^x2 = 0", "unexpected-token", "x2", 0),
    ("x1^(2) = 0", "unexpected-token", "(", 0),
    ("x1^ = 0", "unexpected-token", "=", 0),
    ("x1^99999999999 = 0", "exponent-too-large", "99999999999", 0),
    ("x1*x2 = 0 @arity=1", "arity-below-used", "1", 1),
    ("x3 = 0 @arity=2", "arity-below-used", "2", 0),
    ("0 = 0 @arity=0", "invalid-arity", "0", 2),
    ("x1 = 0 @arity=-1", "invalid-arity", "-", 0),
    ("x0 = 1", "invalid-variable", "x0", 0),
    ("x = 1", "invalid-variable", "x", 0),
    ("x01 = 1", "invalid-variable", "x01", 0),
    ("y = 1", "unknown-identifier", "y", 0),
    ("x1 = z2", "unknown-identifier", "z2", 0),
    ("2x1 = 0", "unexpected-token", "x1", 0),
    ("x1 + 1", "unexpected-end", "", 0),
    ("x1 = ", "unexpected-end", "", 0),
    ("x1 $ 1 = 0", "unexpected-character", "$", 0),
    ("(x1 = 0", "unexpected-token", "=", 0),
    ("x1 = 0 = 1", "unexpected-token", "=", 1),
    ("x1 = 0 @size=2", "unexpected-token", "size", 0),
]


def render(text):
    body, _, suffix = text.partition("@")
    indices = [int(v) for v in re.findall(r"x(\d+)", body)]
    used = max(indices, default=0)
    forced = int(suffix.split("=")[1]) if suffix else 0
    arity = max(used, forced, 1)
    gens = sympy.symbols(" ".join(f"x{i}" for i in range(1, arity + 1)) + " ,")
    lhs, rhs = body.split("=")
    names = {f"x{i}": g for i, g in enumerate(gens, 1)}
    expr = sympy.expand(
        sympy.sympify(lhs.replace("^", "**"), locals=names) - sympy.sympify(rhs.replace("^", "**"), locals=names)
    )
    poly = sympy.Poly(expr, *gens)
    terms = sorted(poly.terms(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    terms = [(m, int(c)) for m, c in terms if c != 0]
    if not terms:
        return f"0 = 0 @arity={arity}"
    out = []
    for i, (monom, c) in enumerate(terms):
        factors = []
        for j, e in enumerate(monom, 1):
            if e == 1:
                factors.append(f"x{j}")
            elif e > 1:
                factors.append(f"x{j}^{e}")
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            piece = str(mag)
        elif mag == 1:
            piece = mono
        else:
            piece = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + piece)
        else:
            out.append((" - " if c < 0 else " + ") + piece)
    return f"{''.join(out)} = 0 @arity={arity}"


def span(text, needle, occurrence):
    if needle == "":
        return len(text), len(text)
    start = -1
    for _ in range(occurrence + 1):
        start = text.index(needle, start + 1)
    return start, start + len(needle)


def main():
    rows = []
    for text in VALID:
        rows.append(f"ok\t{text}\t{render(text)}")
    for text, code, needle, occurrence in ERRORS:
        a, b = span(text, needle, occurrence)
        rows.append(f"err\t{text}\t{code} {a}..{b}")
    assert len(rows) == 100, len(rows)
    print("\n".join(rows))


if __name__ == "__main__":
    main()
