"""Data model for annotated networks and delimited-file ingestion.

A network is a node registry plus a (possibly directed, possibly
weighted) adjacency matrix and a node-by-label annotation table.  All
tables load from CSV/TSV: the delimiter is sniffed from the first
non-comment line, lines starting with ``#`` are skipped, and a leading
header row is consumed when its fields match the canonical column names
(``src,dst[,weight]``, ``node,label``, ``node,group``).  Node ids are
arbitrary UTF-8 strings; node order is first-encounter order.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import ParseError, UsageError, ValidationError

Entry = tuple[int, int, float]

#: Node-id -> group-id mapping used by silhouette scoring; may cover only
#: part of the network (unmapped nodes simply do not participate).
GroupingTable = dict[str, str]


class SparseMatrix:
    """General sparse 2-D numeric array (CSR-backed).

    Duplicate (row, col) pairs in the input entries are summed on build;
    explicit zeros are dropped, so ``entries`` lists exactly the stored
    nonzeros in row-major order.
    """

    __slots__ = ("_csr",)

    def __init__(self, n_rows: int, n_cols: int, entries: Iterable[Entry] = ()):
        rows, cols, vals = [], [], []
        for i, j, v in entries:
            if not (0 <= i < n_rows and 0 <= j < n_cols):
                raise ValidationError(f"entry ({i}, {j}) out of bounds for {n_rows}x{n_cols} matrix")
            rows.append(i)
            cols.append(j)
            vals.append(v)
        mat = sp.csr_matrix(
            (np.asarray(vals, dtype=np.float64), (rows, cols)),
            shape=(n_rows, n_cols),
        )
        self._csr = self._canonical(mat)

    @staticmethod
    def _canonical(mat: sp.csr_matrix) -> sp.csr_matrix:
        mat.sum_duplicates()
        mat.eliminate_zeros()
        mat.sort_indices()
        return mat

    @classmethod
    def from_scipy(cls, mat) -> "SparseMatrix":
        out = cls.__new__(cls)
        out._csr = cls._canonical(sp.csr_matrix(mat, dtype=np.float64))
        return out

    @property
    def n_rows(self) -> int:
        return self._csr.shape[0]

    @property
    def n_cols(self) -> int:
        return self._csr.shape[1]

    @property
    def nnz(self) -> int:
        return self._csr.nnz

    @property
    def entries(self) -> list[Entry]:
        coo = self._csr.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return [(int(coo.row[k]), int(coo.col[k]), float(coo.data[k])) for k in order]

    def csr(self) -> sp.csr_matrix:
        """Underlying CSR matrix; treat as read-only."""
        return self._csr

    def toarray(self) -> np.ndarray:
        return self._csr.toarray()

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_scipy(self._csr.transpose())

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.n_cols != other.n_rows:
            raise UsageError(
                f"matrix product dimension mismatch: {self.n_rows}x{self.n_cols} @ {other.n_rows}x{other.n_cols}"
            )
        return SparseMatrix.from_scipy(self._csr @ other._csr)

    def row_sums(self) -> np.ndarray:
        return np.asarray(self._csr.sum(axis=1), dtype=np.float64).ravel()

    def col_sums(self) -> np.ndarray:
        return np.asarray(self._csr.sum(axis=0), dtype=np.float64).ravel()

    def col_counts(self) -> np.ndarray:
        """Number of stored nonzeros per column."""
        return np.diff(self._csr.tocsc().indptr)

    def select_columns(self, cols: Sequence[int]) -> "SparseMatrix":
        return SparseMatrix.from_scipy(self._csr[:, list(cols)])

    def permute_rows(self, order: Sequence[int]) -> "SparseMatrix":
        """New matrix whose row r is this matrix's row ``order[r]``."""
        return SparseMatrix.from_scipy(self._csr[list(order), :])

    def permute_columns(self, order: Sequence[int]) -> "SparseMatrix":
        """New matrix whose column c is this matrix's column ``order[c]``."""
        return SparseMatrix.from_scipy(self._csr[:, list(order)])

    def equals(self, other: "SparseMatrix") -> bool:
        if self._csr.shape != other._csr.shape:
            return False
        return (self._csr != other._csr).nnz == 0

    def __repr__(self) -> str:
        return f"SparseMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz})"


@dataclass(frozen=True)
class AnnotatedNetwork:
    """Immutable node registry + adjacency + annotation bipartite table."""

    nodes: list[str]
    adjacency: SparseMatrix
    directed: bool
    annotation_labels: list[str] = field(default_factory=list)
    annotations: SparseMatrix | None = None

    def __post_init__(self):
        n = len(self.nodes)
        if self.adjacency.n_rows != n or self.adjacency.n_cols != n:
            raise ValidationError(f"adjacency must be {n}x{n}, got {self.adjacency.n_rows}x{self.adjacency.n_cols}")
        if self.annotations is None:
            object.__setattr__(self, "annotations", SparseMatrix(n, len(self.annotation_labels)))
        ann = self.annotations
        if ann.n_rows != n or ann.n_cols != len(self.annotation_labels):
            raise ValidationError("annotation table shape does not match nodes x labels")
        if not self.directed and not self.adjacency.equals(self.adjacency.transpose()):
            raise ValidationError("undirected network requires a symmetric adjacency")
        if ann.nnz and ann.csr().data.min() < 0:
            raise ValidationError("annotation entries must be non-negative")

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def node_index(self) -> dict[str, int]:
        cache = getattr(self, "_node_index", None)
        if cache is None:
            cache = {node: i for i, node in enumerate(self.nodes)}
            object.__setattr__(self, "_node_index", cache)
        return cache

    def annotated_nodes(self) -> list[str]:
        """Nodes carrying at least one label, in node order."""
        counts = np.diff(self.annotations.csr().indptr)
        return [node for node, c in zip(self.nodes, counts) if c > 0]

    def with_annotations(self, labels: list[str], table: SparseMatrix) -> "AnnotatedNetwork":
        return AnnotatedNetwork(self.nodes, self.adjacency, self.directed, labels, table)


# ---------------------------------------------------------------------------
# Delimited-file parsing


def _data_rows(path: str, canonical_headers: tuple[tuple[str, ...], ...]) -> Iterator[tuple[int, list[str]]]:
    """Yield (line_number, fields) for each data row of a delimited file.

    Skips comment (``#``) and blank lines, sniffs the delimiter from the
    first remaining line, and consumes that line as a header when its
    lower-cased fields match one of ``canonical_headers``.
    """
    with open(path, encoding="utf-8") as fh:
        delimiter = None
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if delimiter is None:
                delimiter = "\t" if "\t" in line else ","
                fields = next(csv.reader([line], delimiter=delimiter))
                probe = tuple(f.strip().lower() for f in fields)
                if probe in canonical_headers:
                    continue
            fields = next(csv.reader([line], delimiter=delimiter))
            yield lineno, [f.strip() for f in fields]


_EDGE_HEADERS = (("src", "dst"), ("src", "dst", "weight"))
_ANNOTATION_HEADERS = (("node", "label"),)
_GROUPING_HEADERS = (("node", "group"),)


def load_edges(path: str, directed: bool, weighted: bool = False) -> AnnotatedNetwork:
    """Load an edge list into an AnnotatedNetwork with an empty annotation table.

    Rows are ``src,dst`` (``src,dst,weight`` when ``weighted``).  Nodes are
    registered in first-encounter order, duplicate edges sum their weights,
    and for undirected input every edge is mirrored (self-loops are stored
    once; their mirror is the same entry).
    """
    nodes: list[str] = []
    index: dict[str, int] = {}
    raw_edges: list[tuple[int, int, float]] = []

    def intern(name: str) -> int:
        if name not in index:
            index[name] = len(nodes)
            nodes.append(name)
        return index[name]

    want = 3 if weighted else 2
    for lineno, fields in _data_rows(path, _EDGE_HEADERS):
        if len(fields) != want:
            raise ParseError(f"expected {want} fields, got {len(fields)}", path, lineno)
        if not fields[0] or not fields[1]:
            raise ParseError("empty node id", path, lineno)
        if weighted:
            try:
                w = float(fields[2])
            except ValueError:
                raise ParseError(f"bad weight {fields[2]!r}", path, lineno) from None
            if not np.isfinite(w):
                raise ParseError(f"non-finite weight {fields[2]!r}", path, lineno)
            if w < 0:
                raise ValidationError(f"{path}:{lineno}: negative weight {w}")
        else:
            w = 1.0
        raw_edges.append((intern(fields[0]), intern(fields[1]), w))

    if not raw_edges:
        raise ValidationError(f"{path}: no edge rows found")

    entries: list[Entry] = []
    for i, j, w in raw_edges:
        entries.append((i, j, w))
        if not directed and i != j:
            entries.append((j, i, w))
    n = len(nodes)
    return AnnotatedNetwork(nodes, SparseMatrix(n, n, entries), directed)


def load_annotations(path: str, net: AnnotatedNetwork) -> AnnotatedNetwork:
    """Fill a network's annotation table from ``node,label`` rows.

    Labels are registered in first-encounter order; multi-label nodes use
    one row per label and repeated (node, label) pairs collapse to a single
    unit entry.  Rows naming nodes absent from ``net`` are rejected.
    """
    labels: list[str] = []
    label_index: dict[str, int] = {}
    pairs: set[tuple[int, int]] = set()
    node_index = net.node_index
    saw_rows = False

    for lineno, fields in _data_rows(path, _ANNOTATION_HEADERS):
        saw_rows = True
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, got {len(fields)}", path, lineno)
        node, label = fields
        if node not in node_index:
            raise ValidationError(f"{path}:{lineno}: unknown node id {node!r}")
        if not label:
            raise ParseError("empty label", path, lineno)
        if label not in label_index:
            label_index[label] = len(labels)
            labels.append(label)
        pairs.add((node_index[node], label_index[label]))

    if not saw_rows:
        raise ValidationError(f"{path}: annotation file has no data rows")

    table = SparseMatrix(net.n_nodes, len(labels), ((i, k, 1.0) for i, k in pairs))
    return net.with_annotations(labels, table)


def load_grouping(path: str, net: AnnotatedNetwork | None = None) -> GroupingTable:
    """Load a ``node,group`` table; validates node ids against ``net`` when given."""
    groups: GroupingTable = {}
    for lineno, fields in _data_rows(path, _GROUPING_HEADERS):
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, got {len(fields)}", path, lineno)
        node, group = fields
        if net is not None and node not in net.node_index:
            raise ValidationError(f"{path}:{lineno}: unknown node id {node!r}")
        if groups.get(node, group) != group:
            raise ValidationError(f"{path}:{lineno}: conflicting group for node {node!r}")
        groups[node] = group
    if not groups:
        raise ValidationError(f"{path}: grouping file has no data rows")
    return groups


def load_bipartite(path: str, weighted: bool = False) -> tuple[SparseMatrix, list[str], list[str]]:
    """Load a two-universe edge list (e.g. cuisine,recipe) as a bipartite matrix.

    Row and column ids live in separate namespaces, both ordered by first
    encounter.  Returns ``(matrix, row_ids, col_ids)``.
    """
    row_ids: list[str] = []
    col_ids: list[str] = []
    row_index: dict[str, int] = {}
    col_index: dict[str, int] = {}
    entries: list[Entry] = []

    want = 3 if weighted else 2
    for lineno, fields in _data_rows(path, _EDGE_HEADERS):
        if len(fields) != want:
            raise ParseError(f"expected {want} fields, got {len(fields)}", path, lineno)
        r, c = fields[0], fields[1]
        if not r or not c:
            raise ParseError("empty id", path, lineno)
        if weighted:
            try:
                w = float(fields[2])
            except ValueError:
                raise ParseError(f"bad weight {fields[2]!r}", path, lineno) from None
            if w < 0:
                raise ValidationError(f"{path}:{lineno}: negative weight {w}")
        else:
            w = 1.0
        if r not in row_index:
            row_index[r] = len(row_ids)
            row_ids.append(r)
        if c not in col_index:
            col_index[c] = len(col_ids)
            col_ids.append(c)
        entries.append((row_index[r], col_index[c], w))

    if not entries:
        raise ValidationError(f"{path}: no rows found")
    return SparseMatrix(len(row_ids), len(col_ids), entries), row_ids, col_ids


def drop_rare_labels(net: AnnotatedNetwork, min_count: int) -> AnnotatedNetwork:
    """Remove labels assigned to fewer than ``min_count`` nodes.

    Surviving columns keep their order and entries.  ``min_count=2``
    discards labels that occur only once in the network.
    """
    if min_count < 1:
        raise UsageError(f"min_count must be >= 1, got {min_count}")
    counts = net.annotations.col_counts()
    keep = [k for k in range(len(net.annotation_labels)) if counts[k] >= min_count]
    labels = [net.annotation_labels[k] for k in keep]
    return net.with_annotations(labels, net.annotations.select_columns(keep))


# ---------------------------------------------------------------------------
# Serialisation (round-trips through the loaders above)


def save_edges(net: AnnotatedNetwork, path: str) -> None:
    """Write the adjacency as a ``src,dst,weight`` CSV that reloads identically.

    Edges are emitted in an order that reproduces the network's node order
    under first-encounter loading.  Undirected networks emit each mirrored
    pair once.  Requires every node to appear in at least one edge (always
    true for loader-built networks).
    """
    rows = net.adjacency.entries
    if not net.directed:
        rows = [(i, j, v) for i, j, v in rows if i <= j]

    n = net.n_nodes
    introduced = [False] * n
    used = [False] * len(rows)
    ordered: list[Entry] = []

    def mark(i: int, j: int) -> None:
        introduced[i] = True
        introduced[j] = True

    for t in range(n):
        if introduced[t]:
            continue
        for k, (i, j, v) in enumerate(rows):
            if used[k]:
                continue
            new = [x for x in dict.fromkeys((i, j)) if not introduced[x]]
            if new == [t] or new == [t, t + 1]:
                used[k] = True
                ordered.append((i, j, v))
                mark(i, j)
                break
        else:
            raise ValidationError(
                f"node order is not reproducible from the edge list (node {net.nodes[t]!r}); "
                "cannot serialise this network as an edge CSV"
            )
    ordered.extend(row for k, row in enumerate(rows) if not used[k])

    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["src", "dst", "weight"])
        for i, j, v in ordered:
            writer.writerow([net.nodes[i], net.nodes[j], repr(v)])


def save_annotations(net: AnnotatedNetwork, path: str) -> None:
    """Write the annotation table as ``node,label`` rows, label-major.

    Label-major order makes the label first-encounter order on reload
    equal the network's label order.  Requires unit entries.
    """
    csc = net.annotations.csr().tocsc()
    if csc.nnz and not np.all(csc.data == 1.0):
        raise ValidationError("annotation table has non-unit entries; cannot serialise as node,label rows")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node", "label"])
        for k, label in enumerate(net.annotation_labels):
            for i in csc.indices[csc.indptr[k] : csc.indptr[k + 1]]:
                writer.writerow([net.nodes[int(i)], label])
