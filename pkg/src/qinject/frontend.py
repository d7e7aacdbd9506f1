"""OpenQASM 2.0 frontend.

Parses a single-register (or flattened multi-register) QASM 2.0 program into
a gate-level circuit over a closed primitive set: Clifford gates, Rz
rotations and terminal Z measurements. Composite gates from the qelib1
vocabulary are decomposed at parse time; T and Tdg normalize to Rz(+-pi/4).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import QasmSyntaxError, QubitIndexError, UnsupportedGateError


class GateKind(Enum):
    H = "h"
    S = "s"
    SDG = "sdg"
    X = "x"
    Y = "y"
    Z = "z"
    CX = "cx"
    CZ = "cz"
    SWAP = "swap"
    RZ = "rz"
    T = "t"      # normalized to RZ(pi/4) at parse exit
    TDG = "tdg"  # normalized to RZ(-pi/4) at parse exit
    MEASURE = "measure"


CLIFFORD_KINDS = frozenset(
    {GateKind.H, GateKind.S, GateKind.SDG, GateKind.X, GateKind.Y, GateKind.Z,
     GateKind.CX, GateKind.CZ, GateKind.SWAP}
)

_ARITY = {
    GateKind.H: 1, GateKind.S: 1, GateKind.SDG: 1, GateKind.X: 1,
    GateKind.Y: 1, GateKind.Z: 1, GateKind.RZ: 1, GateKind.T: 1,
    GateKind.TDG: 1, GateKind.MEASURE: 1,
    GateKind.CX: 2, GateKind.CZ: 2, GateKind.SWAP: 2,
}


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    targets: tuple[int, ...]
    angle: float | None = None
    cbit: int | None = None  # classical target, measurements only

    def __post_init__(self):
        if len(self.targets) != _ARITY[self.kind]:
            raise ValueError(f"{self.kind.name} takes {_ARITY[self.kind]} targets")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"duplicate targets in {self.kind.name}: {self.targets}")
        if (self.angle is not None) != (self.kind is GateKind.RZ):
            raise ValueError("angle present iff kind is RZ")


@dataclass
class Circuit:
    num_qubits: int
    gates: list[Gate] = field(default_factory=list)
    name: str = ""

    def validate(self) -> None:
        seen_measure = False
        for g in self.gates:
            for q in g.targets:
                if not 0 <= q < self.num_qubits:
                    raise QubitIndexError(f"qubit {q} out of range (n={self.num_qubits})")
            if g.kind is GateKind.MEASURE:
                seen_measure = True
            elif seen_measure:
                raise QasmSyntaxError("mid-circuit measurement: gates after measure")

    @property
    def num_rz(self) -> int:
        return sum(1 for g in self.gates if g.kind is GateKind.RZ)


# ---------------------------------------------------------------------------
# Decompositions into the primitive set (all correct up to global phase).
# Each entry: (arity, num_params, expander) where expander(qubits, params)
# yields (GateKind, targets, angle) triples.
# ---------------------------------------------------------------------------

def _g(kind, *targets, angle=None):
    return (kind, targets, angle)


def _rz(q, theta):
    return _g(GateKind.RZ, q, angle=theta)


def _ry_seq(q, theta):
    # Ry(t) = S H Rz(t) H Sdg, applied left to right below
    return [_g(GateKind.SDG, q), _g(GateKind.H, q), _rz(q, theta),
            _g(GateKind.H, q), _g(GateKind.S, q)]


def _u3_seq(q, theta, phi, lam):
    # u3(t,p,l) ~ Rz(p) Ry(t) Rz(l)
    return [_rz(q, lam)] + _ry_seq(q, theta) + [_rz(q, phi)]


def _expand_simple(kind):
    return lambda qs, ps: [_g(kind, *qs)]


def _expand_ccx(qs, ps):
    a, b, c = qs
    return [
        _g(GateKind.H, c),
        _g(GateKind.CX, b, c), _rz(c, -math.pi / 4),
        _g(GateKind.CX, a, c), _rz(c, math.pi / 4),
        _g(GateKind.CX, b, c), _rz(c, -math.pi / 4),
        _g(GateKind.CX, a, c),
        _rz(b, math.pi / 4), _rz(c, math.pi / 4),
        _g(GateKind.H, c),
        _g(GateKind.CX, a, b),
        _rz(a, math.pi / 4), _rz(b, -math.pi / 4),
        _g(GateKind.CX, a, b),
    ]


def _expand_ch(qs, ps):
    a, b = qs
    return [
        _g(GateKind.H, b), _g(GateKind.SDG, b),
        _g(GateKind.CX, a, b),
        _g(GateKind.H, b), _rz(b, math.pi / 4),
        _g(GateKind.CX, a, b),
        _rz(b, math.pi / 4), _g(GateKind.H, b),
        _g(GateKind.S, b), _g(GateKind.X, b), _g(GateKind.S, a),
    ]


def _expand_cp(qs, ps):
    a, b = qs
    (lam,) = ps
    return [_rz(a, lam / 2), _g(GateKind.CX, a, b),
            _rz(b, -lam / 2), _g(GateKind.CX, a, b), _rz(b, lam / 2)]


def _expand_crz(qs, ps):
    a, b = qs
    (lam,) = ps
    return [_rz(b, lam / 2), _g(GateKind.CX, a, b),
            _rz(b, -lam / 2), _g(GateKind.CX, a, b)]


def _expand_cswap(qs, ps):
    a, b, c = qs
    return [_g(GateKind.CX, c, b)] + _expand_ccx((a, b, c), ()) + [_g(GateKind.CX, c, b)]


BUILTIN_GATES: dict[str, tuple[int, int, object]] = {
    "id": (1, 0, lambda qs, ps: []),
    "u0": (1, 1, lambda qs, ps: []),
    "x": (1, 0, _expand_simple(GateKind.X)),
    "y": (1, 0, _expand_simple(GateKind.Y)),
    "z": (1, 0, _expand_simple(GateKind.Z)),
    "h": (1, 0, _expand_simple(GateKind.H)),
    "s": (1, 0, _expand_simple(GateKind.S)),
    "sdg": (1, 0, _expand_simple(GateKind.SDG)),
    "t": (1, 0, lambda qs, ps: [_rz(qs[0], math.pi / 4)]),
    "tdg": (1, 0, lambda qs, ps: [_rz(qs[0], -math.pi / 4)]),
    "sx": (1, 0, lambda qs, ps: [_g(GateKind.H, qs[0]), _g(GateKind.S, qs[0]),
                                 _g(GateKind.H, qs[0])]),
    "sxdg": (1, 0, lambda qs, ps: [_g(GateKind.H, qs[0]), _g(GateKind.SDG, qs[0]),
                                   _g(GateKind.H, qs[0])]),
    "rz": (1, 1, lambda qs, ps: [_rz(qs[0], ps[0])]),
    "p": (1, 1, lambda qs, ps: [_rz(qs[0], ps[0])]),
    "u1": (1, 1, lambda qs, ps: [_rz(qs[0], ps[0])]),
    "rx": (1, 1, lambda qs, ps: [_g(GateKind.H, qs[0]), _rz(qs[0], ps[0]),
                                 _g(GateKind.H, qs[0])]),
    "ry": (1, 1, lambda qs, ps: _ry_seq(qs[0], ps[0])),
    "u2": (1, 2, lambda qs, ps: _u3_seq(qs[0], math.pi / 2, ps[0], ps[1])),
    "u3": (1, 3, lambda qs, ps: _u3_seq(qs[0], ps[0], ps[1], ps[2])),
    "u": (1, 3, lambda qs, ps: _u3_seq(qs[0], ps[0], ps[1], ps[2])),
    "cx": (2, 0, _expand_simple(GateKind.CX)),
    "cz": (2, 0, _expand_simple(GateKind.CZ)),
    "cy": (2, 0, lambda qs, ps: [_g(GateKind.SDG, qs[1]), _g(GateKind.CX, qs[0], qs[1]),
                                 _g(GateKind.S, qs[1])]),
    "ch": (2, 0, _expand_ch),
    "swap": (2, 0, _expand_simple(GateKind.SWAP)),
    "cp": (2, 1, _expand_cp),
    "cu1": (2, 1, _expand_cp),
    "crz": (2, 1, _expand_crz),
    "ccx": (3, 0, _expand_ccx),
    "cswap": (3, 0, _expand_cswap),
}


# ---------------------------------------------------------------------------
# Tokenizer / parser
# ---------------------------------------------------------------------------

_SYMBOLS = ("->", "==", "+", "-", "*", "/", "^", "(", ")", "[", "]", ",", ";",
            "{", "}")
_FUNCS = {"sin": math.sin, "cos": math.cos, "tan": math.tan,
          "exp": math.exp, "ln": math.log, "sqrt": math.sqrt}


@dataclass(frozen=True)
class _Token:
    kind: str  # 'id' | 'num' | 'str' | 'sym' | 'eof'
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("//", i):
            j = text.find("\n", i)
            i = n if j < 0 else j
            continue
        if text.startswith("/*", i):
            j = text.find("*/", i)
            if j < 0:
                raise QasmSyntaxError("unterminated block comment", line, col)
            skipped = text[i:j + 2]
            line += skipped.count("\n")
            i = j + 2
            continue
        if ch == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise QasmSyntaxError("unterminated string", line, col)
            tokens.append(_Token("str", text[i + 1:j], line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            tokens.append(_Token("num", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_" or text[j] == "."):
                j += 1
            tokens.append(_Token("id", text[i:j], line, col))
            col += j - i
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(_Token("sym", sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise QasmSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, name: str):
        self.toks = _tokenize(text)
        self.pos = 0
        self.name = name
        self.qregs: dict[str, tuple[int, int]] = {}  # name -> (offset, size)
        self.cregs: dict[str, tuple[int, int]] = {}
        self.num_qubits = 0
        self.num_cbits = 0
        self.gates: list[Gate] = []
        self.seen_measure = False

    # -- token helpers ----------------------------------------------------
    def peek(self) -> _Token:
        return self.toks[self.pos]

    def next(self) -> _Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> _Token:
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            raise QasmSyntaxError(f"expected {want!r}, got {tok.text!r}", tok.line, tok.col)
        return tok

    def accept(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            self.pos += 1
            return True
        return False

    # -- angle expressions -------------------------------------------------
    def parse_expr(self) -> float:
        val = self.parse_term()
        while True:
            if self.accept("sym", "+"):
                val += self.parse_term()
            elif self.accept("sym", "-"):
                val -= self.parse_term()
            else:
                return val

    def parse_term(self) -> float:
        val = self.parse_factor()
        while True:
            if self.accept("sym", "*"):
                val *= self.parse_factor()
            elif self.accept("sym", "/"):
                val /= self.parse_factor()
            else:
                return val

    def parse_factor(self) -> float:
        if self.accept("sym", "-"):
            return -self.parse_factor()
        if self.accept("sym", "+"):
            return self.parse_factor()
        val = self.parse_primary()
        if self.accept("sym", "^"):
            return val ** self.parse_factor()
        return val

    def parse_primary(self) -> float:
        tok = self.next()
        if tok.kind == "num":
            return float(tok.text)
        if tok.kind == "id":
            if tok.text == "pi":
                return math.pi
            if tok.text in _FUNCS:
                self.expect("sym", "(")
                arg = self.parse_expr()
                self.expect("sym", ")")
                return _FUNCS[tok.text](arg)
            raise QasmSyntaxError(f"unknown identifier {tok.text!r} in expression",
                                  tok.line, tok.col)
        if tok.kind == "sym" and tok.text == "(":
            val = self.parse_expr()
            self.expect("sym", ")")
            return val
        raise QasmSyntaxError(f"bad expression token {tok.text!r}", tok.line, tok.col)

    # -- arguments ----------------------------------------------------------
    def parse_qarg(self) -> list[int]:
        """A qubit argument: q[i] or a whole register q (broadcast)."""
        tok = self.expect("id")
        if tok.text not in self.qregs:
            raise QasmSyntaxError(f"unknown quantum register {tok.text!r}",
                                  tok.line, tok.col)
        offset, size = self.qregs[tok.text]
        if self.accept("sym", "["):
            idx_tok = self.expect("num")
            self.expect("sym", "]")
            idx = int(idx_tok.text)
            if idx >= size:
                raise QubitIndexError(
                    f"index {idx} out of range for register {tok.text!r}[{size}]")
            return [offset + idx]
        return list(range(offset, offset + size))

    def parse_carg(self) -> list[int]:
        tok = self.expect("id")
        if tok.text not in self.cregs:
            raise QasmSyntaxError(f"unknown classical register {tok.text!r}",
                                  tok.line, tok.col)
        offset, size = self.cregs[tok.text]
        if self.accept("sym", "["):
            idx_tok = self.expect("num")
            self.expect("sym", "]")
            idx = int(idx_tok.text)
            if idx >= size:
                raise QubitIndexError(
                    f"index {idx} out of range for register {tok.text!r}[{size}]")
            return [offset + idx]
        return list(range(offset, offset + size))

    # -- statements ----------------------------------------------------------
    def parse_program(self) -> Circuit:
        tok = self.peek()
        if tok.kind == "id" and tok.text == "OPENQASM":
            self.next()
            self.expect("num")
            self.expect("sym", ";")
        while self.peek().kind != "eof":
            self.parse_statement()
        circuit = Circuit(self.num_qubits, self.gates, self.name)
        circuit.validate()
        return circuit

    def parse_statement(self) -> None:
        tok = self.next()
        if tok.kind != "id":
            raise QasmSyntaxError(f"expected statement, got {tok.text!r}",
                                  tok.line, tok.col)
        name = tok.text
        if name == "include":
            self.expect("str")
            self.expect("sym", ";")
            return
        if name in ("qreg", "creg"):
            reg_tok = self.expect("id")
            self.expect("sym", "[")
            size = int(self.expect("num").text)
            self.expect("sym", "]")
            self.expect("sym", ";")
            table = self.qregs if name == "qreg" else self.cregs
            if reg_tok.text in self.qregs or reg_tok.text in self.cregs:
                raise QasmSyntaxError(f"register {reg_tok.text!r} redeclared",
                                      reg_tok.line, reg_tok.col)
            if name == "qreg":
                table[reg_tok.text] = (self.num_qubits, size)
                self.num_qubits += size
            else:
                table[reg_tok.text] = (self.num_cbits, size)
                self.num_cbits += size
            return
        if name == "barrier":
            while not self.accept("sym", ";"):
                self.next()
            return
        if name == "measure":
            qarg = self.parse_qarg()
            self.expect("sym", "->")
            carg = self.parse_carg()
            self.expect("sym", ";")
            if len(qarg) != len(carg):
                raise QasmSyntaxError("measure register size mismatch",
                                      tok.line, tok.col)
            for q, c in zip(qarg, carg):
                self.gates.append(Gate(GateKind.MEASURE, (q,), cbit=c))
            self.seen_measure = True
            return
        if name in ("if", "opaque", "gate", "reset"):
            raise UnsupportedGateError(
                f"{name!r} statements are outside the supported QASM subset "
                f"(line {tok.line})")
        self.parse_gate_application(tok)

    def parse_gate_application(self, name_tok: _Token) -> None:
        name = name_tok.text
        if name not in BUILTIN_GATES:
            raise UnsupportedGateError(
                f"gate {name!r} has no registered decomposition (line {name_tok.line})")
        arity, nparams, expander = BUILTIN_GATES[name]
        params: list[float] = []
        if self.accept("sym", "("):
            if not self.accept("sym", ")"):
                params.append(self.parse_expr())
                while self.accept("sym", ","):
                    params.append(self.parse_expr())
                self.expect("sym", ")")
        if len(params) != nparams:
            raise QasmSyntaxError(
                f"gate {name!r} takes {nparams} parameter(s), got {len(params)}",
                name_tok.line, name_tok.col)
        args = [self.parse_qarg()]
        while self.accept("sym", ","):
            args.append(self.parse_qarg())
        self.expect("sym", ";")
        if len(args) != arity:
            raise QasmSyntaxError(
                f"gate {name!r} takes {arity} qubit argument(s), got {len(args)}",
                name_tok.line, name_tok.col)
        if self.seen_measure:
            raise QasmSyntaxError(
                f"gate {name!r} after measurement is not supported",
                name_tok.line, name_tok.col)
        # QASM broadcast: any full-register argument fans out element-wise.
        widths = {len(a) for a in args if len(a) > 1}
        if len(widths) > 1:
            raise QasmSyntaxError("mismatched broadcast register sizes",
                                  name_tok.line, name_tok.col)
        width = widths.pop() if widths else 1
        for i in range(width):
            qubits = tuple(a[i] if len(a) > 1 else a[0] for a in args)
            if len(set(qubits)) != len(qubits):
                raise QasmSyntaxError(f"duplicate qubit operands in {name!r}",
                                      name_tok.line, name_tok.col)
            for kind, targets, angle in expander(qubits, tuple(params)):
                self.gates.append(Gate(kind, targets, angle=angle))


def parse_qasm(text: str, name: str = "") -> Circuit:
    """Parse OpenQASM 2.0 source into a primitive-gate Circuit."""
    return _Parser(text, name).parse_program()


def parse_qasm_file(path: str) -> Circuit:
    import os
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    base = os.path.splitext(os.path.basename(path))[0]
    return parse_qasm(text, name=base)
