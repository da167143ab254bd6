"""Tokenizer for the supported Java subset."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import JavaSyntaxError

IDENT = "ident"
NUMBER = "number"
STRING = "string"
CHARLIT = "char"
PUNCT = "punct"
EOF = "eof"

# Multi-character operators that must lex as one token.  '>' is always a
# single token so that generic argument lists close without special cases.
_MULTI_OPS = (
    ">>>=", "<<=", ">>=", "...", "->", "::",
    "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
)

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$")
_IDENT_CONT = _IDENT_START | set("0123456789")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    def bump(text: str):
        nonlocal line, col
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            j = i
            while j < n and source[j] in " \t\r\n":
                j += 1
            bump(source[i:j])
            i = j
            continue
        if source.startswith("//", i):
            j = source.find("\n", i)
            j = n if j == -1 else j
            bump(source[i:j])
            i = j
            continue
        if source.startswith("/*", i):
            j = source.find("*/", i + 2)
            if j == -1:
                raise JavaSyntaxError("unterminated block comment", line, col)
            bump(source[i : j + 2])
            i = j + 2
            continue
        if ch in _IDENT_START:
            j = i
            while j < n and source[j] in _IDENT_CONT:
                j += 1
            tokens.append(Token(IDENT, source[i:j], line, col))
            bump(source[i:j])
            i = j
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n:
                c = source[j]
                if c.isdigit() or c in "xXabcdefABCDEF_":
                    j += 1
                elif c == "." and not seen_dot:
                    seen_dot = True
                    j += 1
                elif c in "lLfFdD":
                    j += 1
                    break
                else:
                    break
            tokens.append(Token(NUMBER, source[i:j], line, col))
            bump(source[i:j])
            i = j
            continue
        if ch == '"':
            j = i + 1
            while j < n and source[j] != '"':
                j += 2 if source[j] == "\\" else 1
            if j >= n:
                raise JavaSyntaxError("unterminated string literal", line, col)
            tokens.append(Token(STRING, source[i : j + 1], line, col))
            bump(source[i : j + 1])
            i = j + 1
            continue
        if ch == "'":
            j = i + 1
            while j < n and source[j] != "'":
                j += 2 if source[j] == "\\" else 1
            if j >= n:
                raise JavaSyntaxError("unterminated char literal", line, col)
            tokens.append(Token(CHARLIT, source[i : j + 1], line, col))
            bump(source[i : j + 1])
            i = j + 1
            continue
        matched = None
        for op in _MULTI_OPS:
            if source.startswith(op, i):
                matched = op
                break
        if matched:
            tokens.append(Token(PUNCT, matched, line, col))
            bump(matched)
            i += len(matched)
            continue
        if ch in "(){}[];,.@?:=<>!&|+-*/%^~":
            tokens.append(Token(PUNCT, ch, line, col))
            bump(ch)
            i += 1
            continue
        raise JavaSyntaxError(f"unexpected character {ch!r}", line, col)

    tokens.append(Token(EOF, "", line, col))
    return tokens
