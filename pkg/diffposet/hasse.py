"""diffposet-hasse v1 reader and writer

    # comment
    rank_sizes: 1 1 2
    r: 1
    edge 0:0 1:0
    edge 1:0 2:0
    edge 1:0 2:1
    label 2:1 (1,1)

``r:`` and ``label`` lines are optional; ``label <n>:<i> <text>`` takes the rest of the line as text.
"""

import logging
from pathlib import Path
from typing import BinaryIO, Dict, Iterable, List, Optional, Set, TextIO, Tuple, Union

from .exceptions import HasseParseError, PosetStructureError
from .posets import GradedPoset

logger = logging.getLogger(__name__)

HEADER = '# diffposet-hasse v1'


def _parse_int(text: str, what: str, line_number: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise HasseParseError(f'{what} "{text}" is not an integer', line_number) from None


def _parse_element(text: str, rank_sizes: Tuple[int, ...], line_number: int) -> Tuple[int, int]:
    rank, sep, index = text.partition(':')
    if not sep:
        raise HasseParseError(f'element "{text}" is not of the form <rank>:<index>', line_number)
    n = _parse_int(rank, 'rank', line_number)
    i = _parse_int(index, 'index', line_number)
    if not 0 <= n < len(rank_sizes):
        raise HasseParseError(f'rank {n} outside 0..{len(rank_sizes) - 1}', line_number)
    if not 0 <= i < rank_sizes[n]:
        raise HasseParseError(f'index {i} out of range for rank {n} of size {rank_sizes[n]}', line_number)
    return n, i


def parse_hasse(source: Union[str, bytes, TextIO, BinaryIO, Iterable[str]]) -> GradedPoset:
    """Parses text, a stream or an iterable of lines; byte lines must be UTF-8"""
    lines = source.splitlines() if isinstance(source, (str, bytes)) else source
    rank_sizes: Optional[Tuple[int, ...]] = None
    header_line = None
    r = None
    edges: List[Set[Tuple[int, int]]] = []
    labels: Dict[Tuple[int, int], str] = {}
    for line_number, raw in enumerate(lines, start=1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode('utf-8')
            except UnicodeDecodeError as exc:
                raise HasseParseError(f'invalid UTF-8 at byte {exc.start}', line_number) from None
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        keyword, _, rest = line.partition(' ')
        rest = rest.strip()
        if keyword == 'rank_sizes:':
            if rank_sizes is not None:
                raise HasseParseError('duplicate rank_sizes header', line_number)
            rank_sizes = tuple(_parse_int(p, 'rank size', line_number) for p in rest.split())
            if not rank_sizes:
                raise HasseParseError('rank_sizes header lists no ranks', line_number)
            header_line = line_number
            edges = [set() for _ in range(len(rank_sizes) - 1)]
        elif keyword == 'r:':
            if r is not None:
                raise HasseParseError('duplicate r line', line_number)
            r = _parse_int(rest, 'r', line_number)
            if r < 1:
                raise HasseParseError(f'r must be a positive integer, got {r}', line_number)
        elif rank_sizes is None:
            raise HasseParseError(f'"{keyword}" before the rank_sizes header', line_number)
        elif keyword == 'edge':
            parts = rest.split()
            if len(parts) != 2:
                raise HasseParseError('an edge line needs exactly two elements', line_number)
            (n, i), (m, j) = (_parse_element(p, rank_sizes, line_number) for p in parts)
            if m != n + 1:
                raise HasseParseError(f'edge joins ranks {n} and {m}, covers join consecutive ranks', line_number)
            if (i, j) in edges[n]:
                raise HasseParseError(f'duplicate edge {n}:{i} {m}:{j}', line_number)
            edges[n].add((i, j))
        elif keyword == 'label':
            element, _, text = rest.partition(' ')
            key = _parse_element(element, rank_sizes, line_number)
            if key in labels:
                raise HasseParseError(f'duplicate label for {element}', line_number)
            labels[key] = text.strip()
        else:
            raise HasseParseError(f'unknown line "{line}"', line_number)
    if rank_sizes is None:
        raise HasseParseError('missing rank_sizes header')
    label_table = None
    if labels:
        label_table = tuple(tuple(labels.get((n, i), '') for i in range(p)) for n, p in enumerate(rank_sizes))
    try:
        poset = GradedPoset(rank_sizes, tuple(frozenset(level) for level in edges), r, label_table)
    except PosetStructureError as exc:
        raise HasseParseError(str(exc), header_line) from exc
    logger.debug(f'Parsed poset with rank sizes {rank_sizes}')
    return poset


def format_hasse(poset: GradedPoset) -> str:
    lines = [HEADER, 'rank_sizes: ' + ' '.join(str(p) for p in poset.rank_sizes)]
    if poset.r_param is not None:
        lines.append(f'r: {poset.r_param}')
    for n, level in enumerate(poset.cover_edges):
        lines += [f'edge {n}:{i} {n + 1}:{j}' for i, j in sorted(level)]
    if poset.labels is not None:
        for n, rank in enumerate(poset.labels):
            lines += [f'label {n}:{i} {label}' for i, label in enumerate(rank) if label]
    return '\n'.join(lines) + '\n'


def write_hasse(poset: GradedPoset, stream: TextIO):
    stream.write(format_hasse(poset))


def load_hasse(path: Union[str, Path]) -> GradedPoset:
    with open(path, 'rb') as stream:
        return parse_hasse(stream)


def dump_hasse(poset: GradedPoset, path: Union[str, Path]):
    Path(path).write_text(format_hasse(poset), encoding='utf-8')
    logger.info(f'Wrote poset with rank sizes {poset.rank_sizes} to {path}')
