"""Tokenizer for the ViewModel and test-suite DSL files.

Line-oriented pipe rows (data tables, expectation rows) are captured as one
raw token each; their cells and adornments are split later by the parser.
The tokenizer never raises on bad input: it records E001 diagnostics and
keeps scanning.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto

from .diagnostics import Diagnostic, E_SYNTAX, SourceSpan, error


class TokenType(Enum):
    IDENT = auto()
    STRING = auto()
    TRIPLE_STRING = auto()
    INT = auto()
    PIPE_ROW = auto()
    LBRACE = auto()
    RBRACE = auto()
    LPAREN = auto()
    RPAREN = auto()
    COMMA = auto()
    COLON = auto()
    DOT = auto()
    EQUALS = auto()
    EOF = auto()


@dataclass(frozen=True)
class Token:
    type: TokenType
    text: str
    line: int
    column: int
    value: object = None  # unescaped string / int / raw pipe-row text

    def span(self, file: str) -> SourceSpan:
        return SourceSpan(file=file, line=self.line, column=self.column,
                          length=max(len(self.text), 1))


_PUNCT = {
    "{": TokenType.LBRACE,
    "}": TokenType.RBRACE,
    "(": TokenType.LPAREN,
    ")": TokenType.RPAREN,
    ",": TokenType.COMMA,
    ":": TokenType.COLON,
    ".": TokenType.DOT,
    "=": TokenType.EQUALS,
}

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}


class Lexer:
    def __init__(self, text: str, file: str = "<input>"):
        self.text = text
        self.file = file
        self.pos = 0
        self.line = 1
        self.col = 1
        self.diagnostics: list[Diagnostic] = []

    def _span(self, line: int, col: int, length: int = 1) -> SourceSpan:
        return SourceSpan(file=self.file, line=line, column=col, length=length)

    def _peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def _advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def tokens(self) -> list[Token]:
        out: list[Token] = []
        while True:
            self._skip_trivia()
            if self.pos >= len(self.text):
                out.append(Token(TokenType.EOF, "", self.line, self.col))
                return out
            tok = self._next_token()
            if tok is not None:
                out.append(tok)

    def _skip_trivia(self) -> None:
        while self.pos < len(self.text):
            ch = self._peek()
            if ch in " \t\r\n":
                self._advance()
            elif ch == "/" and self._peek(1) == "/":
                while self.pos < len(self.text) and self._peek() != "\n":
                    self._advance()
            else:
                return

    def _next_token(self) -> Token | None:
        ch = self._peek()
        line, col = self.line, self.col
        if ch == "|":
            return self._pipe_row(line, col)
        if ch in _PUNCT:
            self._advance()
            return Token(_PUNCT[ch], ch, line, col)
        if ch == '"':
            if self._peek(1) == '"' and self._peek(2) == '"':
                return self._triple_string(line, col)
            return self._string(line, col)
        if ch.isalpha():
            return self._ident(line, col)
        if ch.isdigit() or (ch == "-" and self._peek(1).isdigit()):
            return self._int(line, col)
        self._advance()
        self.diagnostics.append(error(
            E_SYNTAX, f"unexpected character {ch!r}", self._span(line, col)))
        return None

    def _pipe_row(self, line: int, col: int) -> Token:
        start = self.pos
        while self.pos < len(self.text) and self._peek() != "\n":
            self._advance()
        raw = self.text[start:self.pos].rstrip()
        return Token(TokenType.PIPE_ROW, raw, line, col, value=raw)

    def _string(self, line: int, col: int) -> Token:
        start = self.pos
        self._advance()  # opening quote
        parts: list[str] = []
        while True:
            if self.pos >= len(self.text) or self._peek() == "\n":
                self.diagnostics.append(error(
                    E_SYNTAX, "unterminated string literal", self._span(line, col)))
                break
            ch = self._advance()
            if ch == '"':
                break
            if ch == "\\":
                if self.pos >= len(self.text):
                    self.diagnostics.append(error(
                        E_SYNTAX, "unterminated string literal", self._span(line, col)))
                    break
                esc = self._advance()
                if esc in _ESCAPES:
                    parts.append(_ESCAPES[esc])
                else:
                    self.diagnostics.append(error(
                        E_SYNTAX, f"unknown escape \\{esc}",
                        self._span(self.line, max(self.col - 2, 1), 2)))
            else:
                parts.append(ch)
        text = self.text[start:self.pos]
        return Token(TokenType.STRING, text, line, col, value="".join(parts))

    def _triple_string(self, line: int, col: int) -> Token:
        for _ in range(3):
            self._advance()
        start = self.pos
        while self.pos < len(self.text):
            if self._peek() == '"' and self._peek(1) == '"' and self._peek(2) == '"':
                value = self.text[start:self.pos]
                for _ in range(3):
                    self._advance()
                return Token(TokenType.TRIPLE_STRING, '"""', line, col, value=value)
            self._advance()
        self.diagnostics.append(error(
            E_SYNTAX, "unterminated triple-quoted string", self._span(line, col, 3)))
        return Token(TokenType.TRIPLE_STRING, '"""', line, col, value=self.text[start:])

    def _ident(self, line: int, col: int) -> Token:
        start = self.pos
        while self.pos < len(self.text) and (self._peek().isalnum() or self._peek() == "_"):
            self._advance()
        text = self.text[start:self.pos]
        return Token(TokenType.IDENT, text, line, col, value=text)

    def _int(self, line: int, col: int) -> Token:
        start = self.pos
        if self._peek() == "-":
            self._advance()
        while self.pos < len(self.text) and self._peek().isdigit():
            self._advance()
        text = self.text[start:self.pos]
        return Token(TokenType.INT, text, line, col, value=int(text))


def tokenize(text: str, file: str = "<input>") -> tuple[list[Token], list[Diagnostic]]:
    lexer = Lexer(text, file)
    toks = lexer.tokens()
    return toks, lexer.diagnostics
