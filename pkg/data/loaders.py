"""Functions to read polynomial and node inputs."""

import sys
from pathlib import Path
from typing import List, Optional, TextIO

STDIN_MARKER = "-"
COMMENT_PREFIX = "#"


def load_text(source: str, stdin: Optional[TextIO] = None) -> str:
    """
    Resolve an input source to its text.

    Args:
        source: Inline text, a path to an existing file, or "-" for stdin
        stdin: Stream to read when source is "-" (defaults to sys.stdin)

    Returns:
        The raw text
    """
    if source == STDIN_MARKER:
        return (stdin or sys.stdin).read()
    path = Path(source)
    try:
        is_file = path.is_file()
    except OSError:
        is_file = False
    if is_file:
        return path.read_text()
    return source


def read_inputs(source: str, stdin: Optional[TextIO] = None) -> List[str]:
    """
    Split an input source into items, one per non-blank, non-comment line.

    Inline text is a single item even when it spans lines.
    """
    if source != STDIN_MARKER and not _is_file(source):
        return [source.strip()]
    text = load_text(source, stdin)
    items = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith(COMMENT_PREFIX):
            items.append(line)
    return items


def _is_file(source: str) -> bool:
    try:
        return Path(source).is_file()
    except OSError:
        return False
