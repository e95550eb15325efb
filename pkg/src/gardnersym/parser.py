"""Plain-text grammar for coefficients, differential polynomials, multipliers
and generators.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' unary)?            right associative
    atom   := NUMBER | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'

Identifiers ``u_xxt`` are jet variables of a configured dependent variable,
``A_tt`` are t-derivatives of a configured time function, ``x`` and ``t`` are
the independent variables, ``exp`` and ``AD`` are the built-in calls, and any
other identifier is a parameter. Multiplication is always explicit.
"""

import re
from dataclasses import dataclass

import sympy as sp
from sympy.core.function import AppliedUndef

from .errors import BadDerivativeError, ParseError
from .expr import normalize
from .symbols import AD, JetSpace, _function_class, jet_info, param, t, x

__all__ = ["ParserConfig", "FRAME", "ADJOINT", "parse", "render", "tokenize"]


@dataclass(frozen=True)
class ParserConfig:
    """Names used while parsing.

    ``dependents`` are jet families, ``independents`` the two coordinate
    letters (space first), ``functions`` the identifiers read as functions
    of the time variable.
    """

    dependents: tuple = ("u",)
    independents: tuple = ("x", "t")
    functions: frozenset = frozenset({"A", "B", "C", "Q"})

    def space(self, dep):
        return JetSpace(dep, *self.independents)

    def variable(self, name):
        if name == "x" and self.independents[0] == "x":
            return x
        if name == "t" and self.independents[1] == "t":
            return t
        return sp.Symbol(name, real=True)


FRAME = ParserConfig(dependents=("w",), independents=("r", "s"), functions=frozenset())
ADJOINT = ParserConfig(dependents=("u", "v"))

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<num>(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(),])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(src):
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col,
                             ("number", "identifier", "operator"))
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        elif kind != "ws":
            if kind == "op" and text == "*" and src.startswith("**", pos):
                raise ParseError("use '^' for powers", line, col + 1, ("operand",))
            tokens.append(Token(kind, text, line, col))
            col += len(text)
        else:
            col += len(text)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, src, config):
        self.tokens = tokenize(src)
        self.i = 0
        self.cfg = config

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, expected):
        tok = self.tok
        got = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"unexpected {got}", tok.line, tok.column, tuple(expected))

    def accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.fail((text,))

    def parse(self):
        if self.tok.kind == "eof":
            self.fail(("expression",))
        e = self.expr()
        if self.tok.kind != "eof":
            self.fail(("+", "-", "*", "/", "^", "end of input"))
        return e

    def expr(self):
        e = self.term()
        while True:
            if self.accept("+"):
                e = e + self.term()
            elif self.accept("-"):
                e = e - self.term()
            else:
                return e

    def term(self):
        e = self.unary()
        while True:
            if self.accept("*"):
                e = e * self.unary()
            elif self.accept("/"):
                e = e / self.unary()
            else:
                if self.tok.kind in ("num", "ident") or (self.tok.kind == "op" and self.tok.text == "("):
                    self.fail(("*", "/", "+", "-", "^", ")", "end of input"))
                return e

    def unary(self):
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^"):
            return sp.Pow(base, self.unary())
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return sp.Rational(tok.text)
        if tok.kind == "ident":
            self.i += 1
            if self.accept("("):
                args = [self.expr()]
                while self.accept(","):
                    args.append(self.expr())
                self.expect(")")
                return self.call(tok, args)
            return self.identifier(tok)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.fail(("number", "identifier", "("))

    def call(self, tok, args):
        name = tok.text
        if name in BUILTINS:
            if len(args) != 1:
                raise ParseError(f"{name} takes one argument", tok.line, tok.column, (")",))
            return BUILTINS[name](args[0])
        if "_" in name:
            raise ParseError(f"cannot call {name}", tok.line, tok.column, ("*",))
        return _function_class(name)(*args)

    def identifier(self, tok):
        name = tok.text
        cfg = self.cfg
        if name in cfg.dependents:
            return cfg.space(name).var()
        if name in cfg.independents:
            return cfg.variable(name)
        if name in cfg.functions:
            return _function_class(name)(cfg.variable(cfg.independents[1]))
        head, sep, suffix = name.partition("_")
        if sep and head in cfg.dependents:
            letters = cfg.independents
            if not suffix or any(ch not in letters for ch in suffix):
                raise BadDerivativeError(
                    f"malformed derivative suffix in {name!r}: use letters {''.join(letters)}",
                    tok.line, tok.column, tuple(letters))
            return cfg.space(head).var(suffix.count(letters[0]), suffix.count(letters[1]))
        if sep and head in cfg.functions:
            tl = cfg.independents[1]
            if not suffix or any(ch != tl for ch in suffix):
                raise BadDerivativeError(
                    f"malformed derivative suffix in {name!r}: time functions take only {tl!r}",
                    tok.line, tok.column, (tl,))
            var = cfg.variable(tl)
            return sp.Derivative(_function_class(head)(var), (var, len(suffix)))
        return param(name)


def parse(src, config=None):
    """Parse ``src`` into a normalized expression."""
    src = str(src)
    if not src.strip():
        raise ParseError("empty expression", 1, 1, ("expression",))
    return normalize(_Parser(src, config or ParserConfig()).parse())


# -- rendering ---------------------------------------------------------------

# one-argument calls with fixed meaning; any other name(...) is a function of t
BUILTINS = {"exp": sp.exp, "AD": AD, "sin": sp.sin, "cos": sp.cos, "log": sp.log}


def _needs_parens_as_base(e):
    if isinstance(e, (sp.Symbol, AppliedUndef, sp.exp, AD, sp.Derivative, sp.sin, sp.cos, sp.log)):
        return False
    if e.is_Integer and e >= 0:
        return False
    return True


def _render_number(n):
    if n.is_Integer:
        return str(n)
    if n.is_Rational:
        return f"{n.p}/{n.q}"
    return str(sp.nsimplify(n)) if n.is_Float else str(n)


def _render_factor(e):
    s = render(e)
    if isinstance(e, sp.Add) or (e.is_Rational and not e.is_Integer) or s.startswith("-"):
        return f"({s})"
    return s


def _render_mul(e):
    coeff, factors = e.as_coeff_mul()
    if coeff < 0:
        return "-" + _render_mul(-e) if coeff != -1 or factors else "-1"
    num, den = [], []
    if coeff.is_Rational:
        if coeff.p != 1:
            num.append(str(coeff.p))
        if coeff.q != 1:
            den.append(str(coeff.q))
    else:
        num.append(_render_factor(coeff))
    for f in factors:
        if isinstance(f, sp.Pow) and not isinstance(f, sp.exp) and f.exp.is_Rational and f.exp < 0:
            den.append(_render_factor(sp.Pow(f.base, -f.exp)))
        else:
            num.append(_render_factor(f))
    top = "*".join(num) if num else "1"
    if not den:
        return top
    bottom = den[0] if len(den) == 1 else "(" + "*".join(den) + ")"
    return f"{top}/{bottom}"


def render(e):
    """Text in the module grammar; ``parse(render(e))`` normalizes to ``e``."""
    e = sp.sympify(e)
    if isinstance(e, sp.Add):
        out = ""
        for i, term in enumerate(sp.Add.make_args(e) if not e.is_commutative else e.as_ordered_terms()):
            s = render(term)
            if i == 0:
                out = s
            elif s.startswith("-"):
                out += " - " + s[1:]
            else:
                out += " + " + s
        return out
    if e.is_Number:
        return _render_number(e)
    if e is sp.E:
        return "exp(1)"
    if isinstance(e, sp.Symbol):
        return e.name
    if isinstance(e, sp.Mul):
        return _render_mul(e)
    if isinstance(e, sp.exp):
        return f"exp({render(e.args[0])})"
    if isinstance(e, sp.Pow):
        base = render(e.base)
        if _needs_parens_as_base(e.base):
            base = f"({base})"
        if e.exp.is_Integer and e.exp > 0:
            return f"{base}^{e.exp}"
        return f"{base}^({render(e.exp)})"
    if isinstance(e, AD):
        return f"AD({render(e.args[0])})"
    if isinstance(e, (sp.sin, sp.cos, sp.log)):
        return f"{type(e).__name__}({render(e.args[0])})"
    if isinstance(e, AppliedUndef):
        if e.args == (t,):
            return e.func.__name__
        return f"{e.func.__name__}({', '.join(render(a) for a in e.args)})"
    if isinstance(e, sp.Derivative):
        f = e.expr
        if isinstance(f, AppliedUndef) and f.args == (t,):
            return f.func.__name__ + "_" + "t" * sum(n for _, n in e.variable_count)
    raise ValueError(f"cannot render {e!r} in the expression grammar")


def is_jet(sym):
    return jet_info(sym) is not None
