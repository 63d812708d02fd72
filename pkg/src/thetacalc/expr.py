"""Expression front-end: parsing and canonical printing.

Grammar (byte offsets reported on error):
    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := atom ("^" uint)? | "-" factor
    atom   := number | "x" | "y" | "t" | "T" | "(" expr ")"

The same AST evaluates into a rational function (variable x), a difference
form (x and the operator symbol T, normalized through the noncommutative
product), a bivariate polynomial (x and y), or a polynomial in t for grid
sequences.
"""
from __future__ import annotations

from typing import List, Tuple

from .errors import ExprSyntaxError, ThetaCalcError
from .exact import (BivariatePolynomial, Polynomial, Q, RationalFunction,
                    format_polynomial, _fmt_q)
from .forms import DifferenceForm


class EvalDomainError(ThetaCalcError):
    """Expression is grammatical but meaningless in the requested context."""


# -- tokenizer ---------------------------------------------------------------

_SYMBOLS = "+-*/^()"


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("num", text[i:j], i))
            i = j
            continue
        if ch in "xytT":
            out.append(("var", ch, i))
            i += 1
            continue
        if ch in _SYMBOLS:
            out.append((ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError("unexpected character %r" % ch, i,
                              expected=("number", "variable", "operator"))
    out.append(("end", "", n))
    return out


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            raise ExprSyntaxError("unexpected %r" % (tok[1] or "end of input"),
                                  tok[2], expected=(kind,))
        return self.advance()

    def parse(self):
        e = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError("trailing input %r" % tok[1], tok[2],
                                  expected=("end of input",))
        return e

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            rhs = self.factor()
            node = ("mul" if op == "*" else "div", node, rhs)
        return node

    def factor(self):
        tok = self.peek()
        if tok[0] == "-":
            self.advance()
            return ("neg", self.factor())
        node = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            etok = self.peek()
            if etok[0] != "num":
                raise ExprSyntaxError("exponent must be a nonnegative integer",
                                      etok[2], expected=("uint",))
            self.advance()
            node = ("pow", node, int(etok[1]))
        return node

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.advance()
            return ("num", Q(int(tok[1])))
        if tok[0] == "var":
            self.advance()
            return ("var", tok[1])
        if tok[0] == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ExprSyntaxError("unexpected %r" % (tok[1] or "end of input"), tok[2],
                              expected=("number", "x", "y", "t", "T", "("))


def parse(text: str):
    """Parse to an AST of nested tuples."""
    return Parser(text).parse()


# -- evaluators ---------------------------------------------------------------

def eval_ratfunc(ast, var: str = "x") -> RationalFunction:
    """Evaluate with a single scalar variable; other symbols are rejected."""
    kind = ast[0]
    if kind == "num":
        return RationalFunction.constant(ast[1])
    if kind == "var":
        if ast[1] != var:
            raise EvalDomainError("variable %r not allowed here (expected %s)"
                                  % (ast[1], var))
        return RationalFunction.x()
    if kind == "neg":
        return -eval_ratfunc(ast[1], var)
    if kind == "add":
        return eval_ratfunc(ast[1], var) + eval_ratfunc(ast[2], var)
    if kind == "sub":
        return eval_ratfunc(ast[1], var) - eval_ratfunc(ast[2], var)
    if kind == "mul":
        return eval_ratfunc(ast[1], var) * eval_ratfunc(ast[2], var)
    if kind == "div":
        return eval_ratfunc(ast[1], var) / eval_ratfunc(ast[2], var)
    if kind == "pow":
        return eval_ratfunc(ast[1], var) ** ast[2]
    raise AssertionError(kind)


def eval_form(ast) -> DifferenceForm:
    """Evaluate in the noncommutative form algebra (variables x and T)."""
    kind = ast[0]
    if kind == "num":
        return DifferenceForm.from_scalar(ast[1])
    if kind == "var":
        if ast[1] == "T":
            return DifferenceForm.theta()
        if ast[1] == "x":
            return DifferenceForm.from_scalar(RationalFunction.x())
        raise EvalDomainError("variable %r not allowed in a form" % ast[1])
    if kind == "neg":
        return -eval_form(ast[1])
    if kind == "add":
        return eval_form(ast[1]) + eval_form(ast[2])
    if kind == "sub":
        return eval_form(ast[1]) - eval_form(ast[2])
    if kind == "mul":
        return eval_form(ast[1]) * eval_form(ast[2])
    if kind == "div":
        denom = eval_form(ast[2])
        if denom.is_zero():
            raise EvalDomainError("division by zero form")
        if denom.order != 0:
            raise EvalDomainError("can only divide by an order-0 form")
        inv = DifferenceForm.from_scalar(denom.coeff(0).inverse())
        return eval_form(ast[1]) * inv
    if kind == "pow":
        return eval_form(ast[1]) ** ast[2]
    raise AssertionError(kind)


def eval_bivariate(ast) -> BivariatePolynomial:
    """Evaluate with variables x and y; division restricted to y-free values."""
    kind = ast[0]
    if kind == "num":
        return BivariatePolynomial.from_x(RationalFunction.constant(ast[1]))
    if kind == "var":
        if ast[1] == "y":
            return BivariatePolynomial.y()
        if ast[1] == "x":
            return BivariatePolynomial.from_x(RationalFunction.x())
        raise EvalDomainError("variable %r not allowed in a bivariate polynomial"
                              % ast[1])
    if kind == "neg":
        return -eval_bivariate(ast[1])
    if kind == "add":
        return eval_bivariate(ast[1]) + eval_bivariate(ast[2])
    if kind == "sub":
        return eval_bivariate(ast[1]) - eval_bivariate(ast[2])
    if kind == "mul":
        return eval_bivariate(ast[1]) * eval_bivariate(ast[2])
    if kind == "div":
        d = eval_bivariate(ast[2])
        if d.deg_y > 0:
            raise EvalDomainError("cannot divide by a value involving y")
        if d.is_zero():
            raise EvalDomainError("division by zero")
        return eval_bivariate(ast[1]).scale(d.coeff(0).inverse())
    if kind == "pow":
        return eval_bivariate(ast[1]) ** ast[2]
    raise AssertionError(kind)


def eval_sequence_poly(ast) -> Polynomial:
    """Evaluate an expression in t to a polynomial (for grid sequences)."""
    r = eval_ratfunc(ast, var="t")
    if not r.is_polynomial():
        raise EvalDomainError("sequence expressions must be polynomial in t")
    return r.as_polynomial()


# -- canonical printing ---------------------------------------------------------

def format_ratfunc(r: RationalFunction) -> str:
    return str(r)


def _coeff_pieces(c: RationalFunction):
    """(sign, body) for embedding a coefficient before *T^k."""
    if c.den.degree == 0:
        nonzero = [v for v in c.num.coeffs if v != 0]
        if len(nonzero) == 1:
            k = c.num.degree
            v = c.num.coeffs[-1]
            sign = "-" if v < 0 else "+"
            av = abs(v)
            if k == 0:
                body = _fmt_q(av)
            elif av == 1:
                body = "x" if k == 1 else "x^%d" % k
            else:
                body = "%s*%s" % (_fmt_q(av), "x" if k == 1 else "x^%d" % k)
            return sign, body
        if c.num.coeffs[-1] < 0:
            return "-", "(%s)" % format_polynomial(-c.num, "x")
        return "+", "(%s)" % format_polynomial(c.num, "x")
    return "+", str(c)


def format_form(F: DifferenceForm) -> str:
    """Deterministic display that re-parses to the same normal form."""
    if F.is_zero():
        return "0"
    pieces = []
    for k in range(int(F.order), -1, -1):
        c = F.coeff(k)
        if c.is_zero():
            continue
        if k == 0:
            sign, body = _coeff_pieces(c)
        else:
            tpart = "T" if k == 1 else "T^%d" % k
            if c == RationalFunction.one():
                sign, body = "+", tpart
            elif c == -RationalFunction.one():
                sign, body = "-", tpart
            else:
                sign, body = _coeff_pieces(c)
                body = "%s*%s" % (body, tpart)
        if not pieces:
            pieces.append(body if sign == "+" else "-" + body)
        else:
            pieces.append((" + " if sign == "+" else " - ") + body)
    return "".join(pieces)


def normalize(text: str) -> DifferenceForm:
    """Parse and evaluate to the canonical form object."""
    return eval_form(parse(text))
