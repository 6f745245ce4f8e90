"""Reader for a declarative subset of ISO Prolog.

Standard operator table, ``%`` and ``/* */`` comments, quoted atoms, list
sugar.  Constructs the analysis cannot model (disjunction, if-then-else,
negation, meta-calls, DCG rules, strings) are rejected with
:class:`UnsupportedConstruct` rather than silently misread.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .terms import (
    NIL,
    Atom,
    Directive,
    Float,
    Goal,
    Int,
    Program,
    SourceClause,
    Struct,
    Term,
    Var,
    make_list,
)


class PrologSyntaxError(Exception):
    def __init__(self, message: str, line: int, col: int, filename: str | None = None) -> None:
        self.message = message
        self.line = line
        self.col = col
        self.filename = filename
        where = f"{filename}:" if filename else ""
        super().__init__(f"{where}{line}:{col}: syntax error: {message}")


class UnsupportedConstruct(Exception):
    def __init__(self, construct: str, line: int, filename: str | None = None) -> None:
        self.construct = construct
        self.line = line
        self.filename = filename
        where = f"{filename}:" if filename else ""
        super().__init__(f"{where}{line}: unsupported construct: {construct}")


PREFIX_OPS: dict[str, tuple[int, str]] = {
    ":-": (1200, "fx"),
    "?-": (1200, "fx"),
    "\\+": (900, "fy"),
    "-": (200, "fy"),
    "+": (200, "fy"),
    "\\": (200, "fy"),
}

INFIX_OPS: dict[str, tuple[int, str]] = {
    ":-": (1200, "xfx"),
    "-->": (1200, "xfx"),
    ";": (1100, "xfy"),
    "|": (1100, "xfy"),
    "->": (1050, "xfy"),
    "*->": (1050, "xfy"),
    ",": (1000, "xfy"),
    ":": (200, "xfy"),
    "+": (500, "yfx"),
    "-": (500, "yfx"),
    "/\\": (500, "yfx"),
    "\\/": (500, "yfx"),
    "*": (400, "yfx"),
    "/": (400, "yfx"),
    "//": (400, "yfx"),
    "rem": (400, "yfx"),
    "mod": (400, "yfx"),
    "<<": (400, "yfx"),
    ">>": (400, "yfx"),
    "**": (200, "xfx"),
    "^": (200, "xfy"),
}
for _op in ("=", "\\=", "==", "\\==", "@<", "@>", "@=<", "@>=", "=..", "is",
            "=:=", "=\\=", "<", ">", "=<", ">="):
    INFIX_OPS[_op] = (700, "xfx")

# control constructs and meta-calls outside the analysed subset
UNSUPPORTED_GOALS = {
    (";", 2): "disjunction (;)/2",
    ("->", 2): "if-then-else (->)/2",
    ("*->", 2): "soft-cut (*->)/2",
    ("\\+", 1): "negation as failure (\\+)/1",
    ("not", 1): "negation as failure not/1",
    ("findall", 3): "meta-call findall/3",
    ("bagof", 3): "meta-call bagof/3",
    ("setof", 3): "meta-call setof/3",
    ("forall", 2): "meta-call forall/2",
    ("catch", 3): "meta-call catch/3",
}

_SYMBOL_CHARS = set("+-*/\\^<>=~:.?@#&$")
_SOLO = set("!,;|")


@dataclass
class Token:
    kind: str  # 'var', 'name', 'int', 'float', 'punct', 'end', 'eof'
    text: str
    line: int
    col: int
    layout_before: bool
    quoted: bool = False
    value: int | float | None = None


class Lexer:
    def __init__(self, text: str, filename: str | None = None) -> None:
        self.text = text
        self.filename = filename
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, msg: str) -> PrologSyntaxError:
        return PrologSyntaxError(msg, self.line, self.col, self.filename)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos < len(self.text) and self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _skip_layout(self) -> bool:
        skipped = False
        text = self.text
        while self.pos < len(text):
            c = text[self.pos]
            if c.isspace():
                self._advance()
                skipped = True
            elif c == "%":
                while self.pos < len(text) and text[self.pos] != "\n":
                    self._advance()
                skipped = True
            elif text.startswith("/*", self.pos):
                end = text.find("*/", self.pos + 2)
                if end < 0:
                    raise self.error("unterminated block comment")
                self._advance(end + 2 - self.pos)
                skipped = True
            else:
                break
        return skipped

    def tokens(self) -> list[Token]:
        out: list[Token] = []
        while True:
            layout = self._skip_layout() or not out
            if self.pos >= len(self.text):
                out.append(Token("eof", "", self.line, self.col, True))
                return out
            out.append(self._next(layout))

    def _next(self, layout: bool) -> Token:
        text, start = self.text, self.pos
        line, col = self.line, self.col
        c = text[start]

        def take(kind: str, n: int, **kw: object) -> Token:
            s = text[start:start + n]
            self._advance(n)
            return Token(kind, s, line, col, layout, **kw)  # type: ignore[arg-type]

        if c.isdigit():
            if text.startswith("0'", start) and start + 2 < len(text):
                ch = text[start + 2]
                n = 3
                if ch == "\\" and start + 3 < len(text):
                    ch = {"n": "\n", "t": "\t", "\\": "\\", "'": "'"}.get(text[start + 3], text[start + 3])
                    n = 4
                elif ch == "'" and text.startswith("''", start + 2):
                    n = 4
                return take("int", n, value=ord(ch))
            end = start
            while end < len(text) and text[end].isdigit():
                end += 1
            if end + 1 < len(text) and text[end] == "." and text[end + 1].isdigit():
                end += 1
                while end < len(text) and text[end].isdigit():
                    end += 1
                if end < len(text) and text[end] in "eE":
                    k = end + 1
                    if k < len(text) and text[k] in "+-":
                        k += 1
                    if k < len(text) and text[k].isdigit():
                        end = k
                        while end < len(text) and text[end].isdigit():
                            end += 1
                return take("float", end - start, value=float(text[start:end]))
            return take("int", end - start, value=int(text[start:end]))
        if c.isalpha() or c == "_":
            end = start
            while end < len(text) and (text[end].isalnum() or text[end] == "_"):
                end += 1
            kind = "var" if (c.isupper() or c == "_") else "name"
            return take(kind, end - start)
        if c == "'":
            return self._quoted(layout)
        if c == '"':
            raise UnsupportedConstruct("double-quoted string", line, self.filename)
        if c in "()[]{}":
            return take("punct", 1)
        if c in _SOLO:
            return take("name", 1)
        if c in _SYMBOL_CHARS:
            end = start
            while end < len(text) and text[end] in _SYMBOL_CHARS:
                end += 1
            if text[start:end] == "." and (end >= len(text) or text[end].isspace() or text[end] == "%"):
                return take("end", 1)
            return take("name", end - start)
        raise self.error(f"unexpected character {c!r}")

    def _quoted(self, layout: bool) -> Token:
        line, col = self.line, self.col
        self._advance()
        chars: list[str] = []
        text = self.text
        while True:
            if self.pos >= len(text):
                raise PrologSyntaxError("unterminated quoted atom", line, col, self.filename)
            c = text[self.pos]
            if c == "'":
                if text.startswith("''", self.pos):
                    chars.append("'")
                    self._advance(2)
                    continue
                self._advance()
                break
            if c == "\\" and self.pos + 1 < len(text):
                nxt = text[self.pos + 1]
                chars.append({"n": "\n", "t": "\t", "\\": "\\", "'": "'"}.get(nxt, nxt))
                self._advance(2)
                continue
            chars.append(c)
            self._advance()
        return Token("name", "".join(chars), line, col, layout, quoted=True)


class Parser:
    def __init__(self, text: str, filename: str | None = None) -> None:
        self.filename = filename
        self.toks = Lexer(text, filename).tokens()
        self.i = 0
        self._anon = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Token | None = None) -> PrologSyntaxError:
        tok = tok or self.tok
        return PrologSyntaxError(msg, tok.line, tok.col, self.filename)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = text if text is not None else kind
            got = t.text or t.kind
            raise self.error(f"expected {want!r}, found {got!r}")
        return self.advance()

    # -- clauses ---------------------------------------------------------

    def read_terms(self) -> list[tuple[Term, int]]:
        out = []
        while self.tok.kind != "eof":
            line = self.tok.line
            t = self.parse(1200)
            if self.tok.kind != "end":
                raise self.error(f"operator expected, found {self.tok.text or self.tok.kind!r}")
            self.advance()
            out.append((t, line))
        return out

    # -- terms -----------------------------------------------------------

    def _starts_term(self, t: Token) -> bool:
        if t.kind in ("var", "int", "float"):
            return True
        if t.kind == "punct":
            return t.text in "([{"
        if t.kind == "name":
            if t.text in INFIX_OPS and t.text not in PREFIX_OPS and not t.quoted:
                return False
            return True
        return False

    def parse(self, max_prec: int) -> Term:
        left, left_prec = self._primary(max_prec)
        return self._infix(left, left_prec, max_prec)

    def _infix(self, left: Term, left_prec: int, max_prec: int) -> Term:
        while True:
            t = self.tok
            if t.kind != "name" or t.quoted or t.text not in INFIX_OPS:
                return left
            prec, typ = INFIX_OPS[t.text]
            if prec > max_prec:
                return left
            left_max = prec if typ == "yfx" else prec - 1
            right_max = prec if typ == "xfy" else prec - 1
            if left_prec > left_max:
                return left
            self.advance()
            right = self.parse(right_max)
            name = ";" if t.text == "|" else t.text
            left = Struct(name, (left, right))
            left_prec = prec

    def _primary(self, max_prec: int) -> tuple[Term, int]:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Int(int(t.value)), 0  # type: ignore[arg-type]
        if t.kind == "float":
            self.advance()
            return Float(float(t.value)), 0  # type: ignore[arg-type]
        if t.kind == "var":
            self.advance()
            if t.text == "_":
                self._anon += 1
                return Var(f"_G{self._anon}"), 0
            return Var(t.text), 0
        if t.kind == "punct":
            if t.text == "(":
                self.advance()
                inner = self.parse(1200)
                self.expect("punct", ")")
                return inner, 0
            if t.text == "[":
                return self._list(), 0
            if t.text == "{":
                raise UnsupportedConstruct("curly-brace term {}/1", t.line, self.filename)
            raise self.error(f"unexpected {t.text!r}")
        if t.kind == "name":
            return self._name_term(max_prec)
        if t.kind == "end":
            raise self.error("unexpected end of clause")
        raise self.error("unexpected end of input")

    def _list(self) -> Term:
        self.expect("punct", "[")
        if self.tok.kind == "punct" and self.tok.text == "]":
            self.advance()
            return NIL
        items = [self.parse(999)]
        while self.tok.kind == "name" and self.tok.text == "," and not self.tok.quoted:
            self.advance()
            items.append(self.parse(999))
        tail: Term = NIL
        if self.tok.kind == "name" and self.tok.text == "|" and not self.tok.quoted:
            self.advance()
            tail = self.parse(999)
        self.expect("punct", "]")
        return make_list(items, tail)

    def _name_term(self, max_prec: int) -> tuple[Term, int]:
        t = self.advance()
        name = t.text
        nxt = self.tok
        if nxt.kind == "punct" and nxt.text == "(" and not nxt.layout_before:
            self.advance()
            args = [self.parse(999)]
            while self.tok.kind == "name" and self.tok.text == "," and not self.tok.quoted:
                self.advance()
                args.append(self.parse(999))
            self.expect("punct", ")")
            return Struct(name, tuple(args)), 0
        if name == "-" and not t.quoted and nxt.kind in ("int", "float") and not nxt.layout_before:
            self.advance()
            if nxt.kind == "int":
                return Int(-int(nxt.value)), 0  # type: ignore[arg-type]
            return Float(-float(nxt.value)), 0  # type: ignore[arg-type]
        if name in PREFIX_OPS and not t.quoted and self._starts_term(nxt):
            # an infix operator right after a prefix op means the prefix op is an atom
            if not (nxt.kind == "name" and nxt.text in INFIX_OPS and not self._starts_term(self.peek())):
                prec, typ = PREFIX_OPS[name]
                if prec > max_prec:
                    prec = 999
                arg_max = prec if typ == "fy" else prec - 1
                arg = self.parse(arg_max)
                return Struct(name, (arg,)), prec
        if name in ("[]",):
            return NIL, 0
        prec = 0
        if not t.quoted and (name in INFIX_OPS or name in PREFIX_OPS):
            prec = max(INFIX_OPS.get(name, (0, ""))[0], PREFIX_OPS.get(name, (0, ""))[0])
            if prec > max_prec:
                prec = 0
        return Atom(name), prec


def _flatten_conj(t: Term) -> Iterable[Term]:
    while isinstance(t, Struct) and t.functor == "," and t.arity == 2:
        yield from _flatten_conj(t.args[0])
        t = t.args[1]
    yield t


def _body_goals(body: Term, line: int, filename: str | None) -> tuple[Goal, ...]:
    goals: list[Goal] = []
    for g in _flatten_conj(body):
        if isinstance(g, Var):
            raise UnsupportedConstruct(f"meta-call of variable {g.name}", line, filename)
        if isinstance(g, (Int, Float)):
            raise UnsupportedConstruct(f"number {g} used as a goal", line, filename)
        key = (g.functor, g.arity) if isinstance(g, Struct) else (g.name, 0)
        if key in UNSUPPORTED_GOALS:
            raise UnsupportedConstruct(UNSUPPORTED_GOALS[key], line, filename)
        if key[0] == "call":
            raise UnsupportedConstruct(f"meta-call call/{key[1]}", line, filename)
        if key == ("true", 0):
            continue
        goals.append(Goal(g, line))
    return tuple(goals)


def parse_program(text: str, filename: str | None = None) -> Program:
    """Read every clause and directive in ``text``."""
    prog = Program()
    for term, line in Parser(text, filename).read_terms():
        if isinstance(term, Struct) and term.functor == ":-" and term.arity == 1:
            prog.directives.append(Directive(term.args[0], line))
            continue
        if isinstance(term, Struct) and term.functor == "-->" and term.arity == 2:
            raise UnsupportedConstruct("DCG rule (-->)/2", line, filename)
        if isinstance(term, Struct) and term.functor == ":-" and term.arity == 2:
            head, body = term.args
            goals = _body_goals(body, line, filename)
        else:
            head, goals = term, ()
        if not isinstance(head, (Atom, Struct)):
            raise PrologSyntaxError(f"clause head is not callable: {head}", line, 1, filename)
        prog.clauses.append(SourceClause(head, goals, line))
    return prog


def parse_term(text: str) -> Term:
    """Read a single term; a trailing ``.`` is optional."""
    src = text.strip()
    if not src.endswith("."):
        src += " ."
    terms = Parser(src).read_terms()
    if len(terms) != 1:
        raise PrologSyntaxError("expected exactly one term", 1, 1)
    return terms[0][0]
