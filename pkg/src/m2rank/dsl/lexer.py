from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Kind(Enum):
    INT = "INT"
    IDENT = "IDENT"
    Q = "Q"
    CARET = "^"
    STAR = "*"
    SLASH = "/"
    PLUS = "+"
    MINUS = "-"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","
    SEMI = ";"
    INF = "INF"
    EOF = "EOF"


@dataclass(frozen=True)
class Token:
    kind: Kind
    text: str
    start: int
    end: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


class LexError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


_PUNCT = {
    "^": Kind.CARET,
    "*": Kind.STAR,
    "/": Kind.SLASH,
    "+": Kind.PLUS,
    "-": Kind.MINUS,
    "(": Kind.LPAREN,
    ")": Kind.RPAREN,
    ",": Kind.COMMA,
    ";": Kind.SEMI,
}


def tokenize(src: str | bytes) -> list[Token]:
    """Split source text into tokens; offsets are byte offsets into UTF-8."""
    data = src.encode("utf-8") if isinstance(src, str) else bytes(src)
    out: list[Token] = []
    i, n = 0, len(data)
    while i < n:
        ch = chr(data[i]) if data[i] < 128 else None
        if ch is None:
            raise LexError(f"unexpected byte 0x{data[i]:02x}", i)
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and data[j] < 128 and chr(data[j]).isdigit():
                j += 1
            out.append(Token(Kind.INT, data[i:j].decode(), i, j))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and data[j] < 128 and (chr(data[j]).isalnum() or chr(data[j]) == "_"):
                j += 1
            word = data[i:j].decode()
            kind = Kind.Q if word == "q" else Kind.INF if word == "inf" else Kind.IDENT
            out.append(Token(kind, word, i, j))
            i = j
        elif ch in _PUNCT:
            out.append(Token(_PUNCT[ch], ch, i, i + 1))
            i += 1
        else:
            raise LexError(f"unexpected character {ch!r}", i)
    out.append(Token(Kind.EOF, "", n, n))
    return out
