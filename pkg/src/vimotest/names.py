"""Identifier word splitting and case conversion used for default target names."""

from __future__ import annotations

import re

_WORD_RE = re.compile(r"[A-Z]+(?![a-z])|[A-Z][a-z0-9]*|[a-z0-9]+")


def split_words(identifier: str) -> list[str]:
    """Split an identifier into words on underscores and case boundaries.

    "AddNewTask" -> ["Add", "New", "Task"]; "a_b" -> ["a", "b"];
    trailing acronyms stay together: "TaskListVM" -> ["Task", "List", "VM"].
    """
    return _WORD_RE.findall(identifier)


def _words_of(parts: tuple[str, ...]) -> list[str]:
    words: list[str] = []
    for part in parts:
        words.extend(split_words(part))
    return words


def camel_case(*parts: str) -> str:
    words = _words_of(parts)
    if not words:
        return ""
    head = words[0].lower()
    return head + "".join(w.capitalize() for w in words[1:])


def pascal_case(*parts: str) -> str:
    return "".join(w.capitalize() for w in _words_of(parts))


def snake_case(*parts: str) -> str:
    return "_".join(w.lower() for w in _words_of(parts))
