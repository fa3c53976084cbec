"""Lexer and recursive-descent parser for `.spec` files.

Grammar (one or more blocks per source text):

    module   := block+
    block    := "spec" IDENT section* "end"
    section  := "sorts" sortdecl+
              | ("constructors" | "observers" | "others") opdecl+
              | "domains" vardecls? domdecl+
              | "axioms" vardecls? axiom+
    sortdecl := IDENT [ "[" IDENT ("," IDENT)* "]" ]
    opdecl   := IDENT ":" IDENT* ("->" | "->?") IDENT [";"]
    vardecls := "forall" IDENT ":" IDENT ("," IDENT ":" IDENT)* ";"
    domdecl  := IDENT "(" IDENT ("," IDENT)* ")" "if" boolterm ";"
    axiom    := (term "=" term | boolterm) ["if" boolterm] ";"
    boolterm := andterm ("or" andterm)*
    andterm  := unary ("and" unary)*
    unary    := "not" unary | "true" | "false" | term | "(" boolterm ")"
    term     := IDENT [ "(" [term ("," term)*] ")" ]

A bare identifier is a variable reference; operation applications always
carry parentheses, so `empty()` is an application and `S` a variable.
Comments run from `--` to end of line.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SpecSyntaxError
from .specast import (And, App, Axiom, BoolLit, Domain, Not, OpSig, Or, Section,
                      SortDecl, SpecBlock, SpecModule, Term, Var)

KEYWORDS = {"spec", "end", "sorts", "constructors", "observers", "others",
            "domains", "axioms", "forall", "if", "not", "and", "or",
            "true", "false"}

SECTION_STARTERS = {"sorts", "constructors", "observers", "others",
                    "domains", "axioms", "end"}

_PUNCT = {"(": "LPAREN", ")": "RPAREN", "[": "LBRACK", "]": "RBRACK",
          ",": "COMMA", ";": "SEMI", ":": "COLON", "=": "EQ"}


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, ARROW, PARROW, punctuation kinds, EOF, or a keyword
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith("->?", i):
            toks.append(Token("PARROW", "->?", line, col))
            i += 3
            col += 3
            continue
        if text.startswith("->", i):
            toks.append(Token("ARROW", "->", line, col))
            i += 2
            col += 2
            continue
        if c in _PUNCT:
            toks.append(Token(_PUNCT[c], c, line, col))
            i += 1
            col += 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = word if word in KEYWORDS else "IDENT"
            toks.append(Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        raise SpecSyntaxError(f"unexpected character {c!r}", line, col)
    toks.append(Token("EOF", "", line, col))
    return toks


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- token helpers ------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            raise SpecSyntaxError(f"expected {kind!r}, found {t.text!r}", t.line, t.col)
        return self.next()

    def accept(self, kind: str) -> Token | None:
        if self.peek().kind == kind:
            return self.next()
        return None

    def fail(self, message: str) -> SpecSyntaxError:
        t = self.peek()
        return SpecSyntaxError(message, t.line, t.col)

    # -- grammar ------------------------------------------------------------

    def parse_module(self) -> SpecModule:
        blocks = [self.parse_block()]
        while self.peek().kind == "spec":
            blocks.append(self.parse_block())
        self.expect("EOF")
        sorts: list[SortDecl] = []
        ops: list[OpSig] = []
        axioms: list[Axiom] = []
        for b in blocks:
            sorts.extend(b.sorts)
            ops.extend(b.ops)
            axioms.extend(b.axioms)
        return SpecModule(blocks[0].name, tuple(sorts), tuple(ops),
                          tuple(axioms), tuple(blocks))

    def parse_block(self) -> SpecBlock:
        self.expect("spec")
        name = self.expect("IDENT").text
        sorts: list[SortDecl] = []
        ops: list[OpSig] = []
        axioms: list[Axiom] = []
        axiom_universals: tuple[tuple[str, str], ...] = ()
        domains: dict[str, tuple[Domain, int, int]] = {}
        while self.peek().kind != "end":
            kw = self.peek()
            if kw.kind == "sorts":
                self.next()
                sorts.extend(self.parse_sortdecls())
            elif kw.kind in ("constructors", "observers", "others"):
                self.next()
                section = Section(kw.kind)
                owner = sorts[0].name if sorts else ""
                ops.extend(self.parse_opdecls(section, owner))
            elif kw.kind == "domains":
                self.next()
                self.parse_domains(domains)
            elif kw.kind == "axioms":
                self.next()
                axiom_universals, block_axioms = self.parse_axioms()
                axioms.extend(block_axioms)
            elif kw.kind == "EOF":
                raise self.fail("unexpected end of input, expected 'end'")
            else:
                raise self.fail(f"expected a section keyword, found {kw.text!r}")
        self.expect("end")
        ops = [self.attach_domain(o, domains) for o in ops]
        for name_left, (_, line, col) in domains.items():
            if not any(o.name == name_left for o in ops):
                raise SpecSyntaxError(f"domain clause for unknown operation {name_left!r}",
                                      line, col)
        return SpecBlock(name, tuple(sorts), tuple(ops), tuple(axioms),
                         axiom_universals)

    def attach_domain(self, op: OpSig,
                      domains: dict[str, tuple[Domain, int, int]]) -> OpSig:
        if op.name in domains:
            dom = domains[op.name][0]
            return OpSig(op.name, op.arg_sorts, op.result_sort, op.section,
                         op.partial, dom, op.owner, op.kind, op.line)
        return op

    def parse_sortdecls(self) -> list[SortDecl]:
        decls = []
        while self.peek().kind == "IDENT":
            t = self.next()
            params: list[str] = []
            if self.accept("LBRACK"):
                params.append(self.expect("IDENT").text)
                while self.accept("COMMA"):
                    params.append(self.expect("IDENT").text)
                self.expect("RBRACK")
            decls.append(SortDecl(t.text, tuple(params), line=t.line))
        if not decls:
            raise self.fail("expected at least one sort declaration")
        return decls

    def parse_opdecls(self, section: Section, owner: str) -> list[OpSig]:
        decls = []
        while self.peek().kind == "IDENT":
            name_tok = self.next()
            self.expect("COLON")
            args: list[str] = []
            while self.peek().kind == "IDENT":
                args.append(self.next().text)
            arrow = self.peek()
            if arrow.kind == "PARROW":
                partial = True
            elif arrow.kind == "ARROW":
                partial = False
            else:
                raise self.fail("expected '->' or '->?' in operation signature")
            self.next()
            result = self.expect("IDENT").text
            self.accept("SEMI")
            decls.append(OpSig(name_tok.text, tuple(args), result, section,
                               partial, owner=owner, line=name_tok.line))
        if not decls:
            raise self.fail(f"empty {section.value} section")
        return decls

    def parse_domains(self, out: dict[str, tuple[Domain, int, int]]) -> None:
        if self.peek().kind == "forall":
            self.parse_vardecls()  # variable sorts are implied by signatures
        parsed_any = False
        while self.peek().kind == "IDENT":
            parsed_any = True
            head = self.next()
            self.expect("LPAREN")
            arg_vars = [self.expect("IDENT").text]
            while self.accept("COMMA"):
                arg_vars.append(self.expect("IDENT").text)
            self.expect("RPAREN")
            self.expect("if")
            cond = self.parse_boolterm()
            self.expect("SEMI")
            if head.text in out:
                raise SpecSyntaxError(f"duplicate domain clause for {head.text!r}",
                                      head.line, head.col)
            out[head.text] = (Domain(tuple(arg_vars), cond), head.line, head.col)
        if not parsed_any:
            raise self.fail("empty domains section")

    def parse_vardecls(self) -> tuple[tuple[str, str], ...]:
        self.expect("forall")
        decls = []
        while True:
            var = self.expect("IDENT").text
            self.expect("COLON")
            sort = self.expect("IDENT").text
            decls.append((var, sort))
            if not self.accept("COMMA"):
                break
        self.expect("SEMI")
        return tuple(decls)

    def parse_axioms(self) -> tuple[tuple[tuple[str, str], ...], list[Axiom]]:
        universals: tuple[tuple[str, str], ...] = ()
        if self.peek().kind == "forall":
            universals = self.parse_vardecls()
        axioms = []
        while self.peek().kind not in SECTION_STARTERS and self.peek().kind != "EOF":
            axioms.append(self.parse_axiom(universals))
        if not axioms:
            raise self.fail("empty axioms section")
        return universals, axioms

    def parse_axiom(self, universals: tuple[tuple[str, str], ...]) -> Axiom:
        start = self.peek()
        lhs = self.parse_boolterm()
        rhs = None
        if self.accept("EQ"):
            rhs = self.parse_boolterm()
        hypothesis = None
        if self.accept("if"):
            hypothesis = self.parse_boolterm()
        self.expect("SEMI")
        used = _axiom_vars(lhs, rhs, hypothesis)
        decls = tuple((v, s) for v, s in universals if v in used)
        return Axiom(decls, lhs, rhs, hypothesis, line=start.line)

    # -- terms ---------------------------------------------------------------

    def parse_boolterm(self) -> Term:
        t = self.parse_andterm()
        while self.accept("or"):
            t = Or(t, self.parse_andterm())
        return t

    def parse_andterm(self) -> Term:
        t = self.parse_unary()
        while self.accept("and"):
            t = And(t, self.parse_unary())
        return t

    def parse_unary(self) -> Term:
        tok = self.peek()
        if tok.kind == "not":
            self.next()
            return Not(self.parse_unary())
        if tok.kind == "true":
            self.next()
            return BoolLit(True)
        if tok.kind == "false":
            self.next()
            return BoolLit(False)
        if tok.kind == "LPAREN":
            self.next()
            t = self.parse_boolterm()
            self.expect("RPAREN")
            return t
        return self.parse_term()

    def parse_term(self) -> Term:
        tok = self.expect("IDENT")
        if self.accept("LPAREN"):
            args: list[Term] = []
            if self.peek().kind != "RPAREN":
                args.append(self.parse_boolterm())
                while self.accept("COMMA"):
                    args.append(self.parse_boolterm())
            self.expect("RPAREN")
            return App(tok.text, tuple(args))
        return Var(tok.text)


def _axiom_vars(lhs: Term, rhs: Term | None, hyp: Term | None) -> set[str]:
    from .specast import term_vars
    used = term_vars(lhs)
    if rhs is not None:
        used |= term_vars(rhs)
    if hyp is not None:
        used |= term_vars(hyp)
    return used


def parse_specification(text: str) -> SpecModule:
    """Parse source text holding one or more spec blocks into a module."""
    return Parser(tokenize(text)).parse_module()
