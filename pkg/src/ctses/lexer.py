"""Java lexical scanner producing the token streams all metrics share.

One lexer feeds every token-based metric (n-gram, METEOR, ROUGE-L) so their
views of a source file agree token for token. Comments can be folded in as
lowercased word tokens, which lets natural-language additions such as
"Given/When/Then" comments participate in lexical alignment.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import LexError, UnterminatedCommentError, UnterminatedStringError
from .fingerprints import fingerprint

# The 50 reserved words of the Java language plus the reserved literals
# true/false/null, which this lexer also tags as keywords.
JAVA_KEYWORDS: frozenset[str] = frozenset({
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
    "class", "const", "continue", "default", "do", "double", "else", "enum",
    "extends", "final", "finally", "float", "for", "goto", "if", "implements",
    "import", "instanceof", "int", "interface", "long", "native", "new",
    "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "try", "void", "volatile", "while",
    "true", "false", "null",
})

# Multi-character operators first so the scanner can use maximal munch.
_OPERATORS: tuple[str, ...] = (
    ">>>=", "<<=", ">>=", ">>>", "==", "!=", "<=", ">=", "&&", "||", "++",
    "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "->",
    "::", "=", "+", "-", "*", "/", "%", "!", "<", ">", "&", "|", "^", "~",
    "?", ":",
)

_PUNCTUATION: tuple[str, ...] = ("...", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@")

_COMMENT_WORD_RE = re.compile(r"[A-Za-z0-9]+")

# Subtoken boundaries: digit runs, acronym runs, capitalized humps,
# lowercase runs. Underscores and dollar signs act as separators.
_SUBTOKEN_RE = re.compile(r"[0-9]+|[A-Z]+(?![a-z])|[A-Z][a-z]*|[a-z]+")


class TokenKind(enum.Enum):
    """Lexical category of a token."""

    KEYWORD = "Keyword"
    IDENTIFIER = "Identifier"
    LITERAL = "Literal"
    OPERATOR = "Operator"
    PUNCTUATION = "Punctuation"
    COMMENT_WORD = "CommentWord"


@dataclass(frozen=True)
class Token:
    """A lexical token with its 1-based source location.

    ``text`` is the exact lexeme for code tokens (literals keep their
    quotes), or a comment word (lowercased by default) for COMMENT_WORD.
    """

    kind: TokenKind
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class LexConfig:
    """Tokenization options.

    include_comments: emit comment words as COMMENT_WORD tokens.
    split_identifiers: replace each identifier with its subtoken parts
        (parts that collide with a keyword are tagged as keywords).
    lowercase_comment_words: lowercase comment words before emission.
    """

    include_comments: bool = True
    split_identifiers: bool = False
    lowercase_comment_words: bool = True

    def fingerprint(self) -> str:
        return fingerprint(self)


@dataclass(frozen=True)
class TokenStream:
    """Ordered token sequence for one source unit."""

    tokens: tuple[Token, ...]
    source_id: str
    config_fingerprint: str

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def texts(self) -> tuple[str, ...]:
        return tuple(token.text for token in self.tokens)

    def code_tokens(self) -> tuple[Token, ...]:
        """Tokens with COMMENT_WORD entries removed (parser input)."""
        return tuple(t for t in self.tokens if t.kind is not TokenKind.COMMENT_WORD)

    @classmethod
    def from_texts(
        cls,
        texts,
        kind: TokenKind = TokenKind.IDENTIFIER,
        source_id: str = "<memory>",
    ) -> "TokenStream":
        """Build a stream from pre-tokenized text, one token per entry.

        Keyword-texted entries are tagged as keywords so weighted n-gram
        scoring sees them the same way the lexer would.
        """
        tokens = []
        for i, text in enumerate(texts):
            k = TokenKind.KEYWORD if text in JAVA_KEYWORDS else kind
            tokens.append(Token(k, text, 1, i + 1))
        return cls(tuple(tokens), source_id, fingerprint({"from_texts": True}))


def split_subtokens(identifier: str) -> list[str]:
    """Split an identifier on camelCase humps, underscores and digit runs.

    Order is preserved, and joining the parts (case-insensitively)
    reconstructs the identifier minus ``_`` and ``$`` separators.

    >>> split_subtokens("stringArray0")
    ['string', 'Array', '0']
    """
    parts = _SUBTOKEN_RE.findall(identifier)
    return parts if parts else [identifier]


def lex(source: str, config: LexConfig = LexConfig(), source_id: str = "<string>") -> TokenStream:
    """Tokenize Java source text.

    Whitespace never produces tokens. String and character literals are
    single LITERAL tokens including their quotes. Comments produce
    COMMENT_WORD tokens (text split on non-alphanumeric boundaries) when
    ``config.include_comments`` is set, and nothing otherwise.

    Raises:
        UnterminatedStringError: a string/char literal is never closed.
        UnterminatedCommentError: a block comment is never closed.
        LexError: any other character outside Java's lexical grammar.
    """
    return TokenStream(
        tokens=tuple(_Scanner(source, config).scan()),
        source_id=source_id,
        config_fingerprint=config.fingerprint(),
    )


class _Scanner:
    """Single-pass scanner with line/column tracking."""

    def __init__(self, source: str, config: LexConfig) -> None:
        self._src = source
        self._cfg = config
        self._pos = 0
        self._line = 1
        self._col = 1
        self._out: list[Token] = []

    def scan(self) -> list[Token]:
        while self._pos < len(self._src):
            ch = self._src[self._pos]
            if ch in " \t\r\n\f":
                self._advance()
            elif ch == "/" and self._peek(1) == "/":
                self._line_comment()
            elif ch == "/" and self._peek(1) == "*":
                self._block_comment()
            else:
                self._token()
        return self._out

    # -- low-level helpers -------------------------------------------------

    def _peek(self, offset: int = 0) -> str:
        pos = self._pos + offset
        return self._src[pos] if pos < len(self._src) else ""

    def _advance(self) -> str:
        ch = self._src[self._pos]
        self._pos += 1
        if ch == "\n":
            self._line += 1
            self._col = 1
        else:
            self._col += 1
        return ch

    def _emit(self, kind: TokenKind, text: str, line: int, col: int) -> None:
        self._out.append(Token(kind, text, line, col))

    # -- comments ----------------------------------------------------------

    def _line_comment(self) -> None:
        line, col = self._line, self._col
        start = self._pos
        while self._pos < len(self._src) and self._peek() != "\n":
            self._advance()
        self._emit_comment_words(self._src[start:self._pos], line, col)

    def _block_comment(self) -> None:
        line, col = self._line, self._col
        start = self._pos
        self._advance()
        self._advance()
        while self._pos < len(self._src):
            if self._peek() == "*" and self._peek(1) == "/":
                self._advance()
                self._advance()
                self._emit_comment_words(self._src[start:self._pos], line, col)
                return
            self._advance()
        raise UnterminatedCommentError("unterminated block comment", line, col)

    def _emit_comment_words(self, raw: str, line: int, col: int) -> None:
        if not self._cfg.include_comments:
            return
        # Recompute each word's position relative to the comment start.
        for match in _COMMENT_WORD_RE.finditer(raw):
            prefix = raw[: match.start()]
            newlines = prefix.count("\n")
            if newlines:
                word_line = line + newlines
                word_col = match.start() - prefix.rfind("\n")
            else:
                word_line = line
                word_col = col + match.start()
            word = match.group(0)
            if self._cfg.lowercase_comment_words:
                word = word.lower()
            self._emit(TokenKind.COMMENT_WORD, word, word_line, word_col)

    # -- code tokens ---------------------------------------------------------

    def _token(self) -> None:
        ch = self._peek()
        line, col = self._line, self._col
        if ch == '"':
            self._string_literal('"', line, col)
        elif ch == "'":
            self._string_literal("'", line, col)
        elif ch.isdigit() or (ch == "." and self._peek(1).isdigit()):
            self._number_literal(line, col)
        elif ch.isalpha() or ch in "_$":
            self._word(line, col)
        else:
            for punct in _PUNCTUATION:
                if self._src.startswith(punct, self._pos):
                    for _ in punct:
                        self._advance()
                    self._emit(TokenKind.PUNCTUATION, punct, line, col)
                    return
            for op in _OPERATORS:
                if self._src.startswith(op, self._pos):
                    for _ in op:
                        self._advance()
                    self._emit(TokenKind.OPERATOR, op, line, col)
                    return
            raise LexError(f"unexpected character {ch!r}", line, col)

    def _string_literal(self, quote: str, line: int, col: int) -> None:
        start = self._pos
        self._advance()
        while self._pos < len(self._src):
            ch = self._peek()
            if ch == "\n":
                break
            if ch == "\\":
                self._advance()
                if self._pos < len(self._src):
                    self._advance()
                continue
            if ch == quote:
                self._advance()
                self._emit(TokenKind.LITERAL, self._src[start:self._pos], line, col)
                return
            self._advance()
        kind = "string" if quote == '"' else "character"
        raise UnterminatedStringError(f"unterminated {kind} literal", line, col)

    def _number_literal(self, line: int, col: int) -> None:
        start = self._pos
        if self._peek() == "0" and self._peek(1) in ("x", "X", "b", "B"):
            self._advance()
            self._advance()
            while self._peek() and (self._peek().isalnum() or self._peek() == "_"):
                self._advance()
        else:
            seen_dot = False
            seen_exp = False
            while True:
                ch = self._peek()
                if ch.isdigit() or ch == "_":
                    self._advance()
                elif ch == "." and not seen_dot and not seen_exp and self._peek(1).isdigit():
                    seen_dot = True
                    self._advance()
                elif ch in ("e", "E") and not seen_exp and \
                        (self._peek(1).isdigit() or
                         (self._peek(1) in ("+", "-") and self._peek(2).isdigit())):
                    seen_exp = True
                    self._advance()
                    if self._peek() in ("+", "-"):
                        self._advance()
                else:
                    break
            if self._peek() in ("l", "L", "f", "F", "d", "D"):
                self._advance()
        self._emit(TokenKind.LITERAL, self._src[start:self._pos], line, col)

    def _word(self, line: int, col: int) -> None:
        start = self._pos
        while self._peek() and (self._peek().isalnum() or self._peek() in "_$"):
            self._advance()
        text = self._src[start:self._pos]
        if text in JAVA_KEYWORDS:
            self._emit(TokenKind.KEYWORD, text, line, col)
        elif self._cfg.split_identifiers:
            offset = 0
            for part in split_subtokens(text):
                idx = text.index(part, offset)
                kind = TokenKind.KEYWORD if part in JAVA_KEYWORDS else TokenKind.IDENTIFIER
                self._emit(kind, part, line, col + idx)
                offset = idx + len(part)
        else:
            self._emit(TokenKind.IDENTIFIER, text, line, col)
