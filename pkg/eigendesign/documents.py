"""
File formats: prior matrices as CSV, designs as JSON.

A matrix file has d lines of d comma-separated decimal numbers. A design document holds a
:class:`~eigendesign.designer.DesignResult` without its diagnostics; floats are written
with their shortest round-trip representation, so load(dump(doc)) is bit-identical.
"""

import csv
import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from eigendesign.linalg import max_norm
from eigendesign.utils.errors import DimensionMismatch, MatrixFormatError

SYMMETRY_TOL = 1e-8
DOCUMENT_KIND = "eigendesign/design"


def parse_matrix(lines):
    """
    Parse CSV lines into a symmetric matrix.

    Parameters
    ----------
    lines: iterable of :class:`str`
        Rows of the matrix. Blank lines are ignored.

    Returns
    -------
    :class:`~numpy.ndarray`

    Examples
    --------

    >>> parse_matrix(["1, 0", "0, 2"])
    array([[1., 0.],
           [0., 2.]])
    >>> parse_matrix(["1, 0", "0, x"])
    Traceback (most recent call last):
    ...
    eigendesign.utils.errors.MatrixFormatError: Not a number: 'x' (row 2, column 2)
    >>> parse_matrix(["1, 1", "0, 1"])
    Traceback (most recent call last):
    ...
    eigendesign.utils.errors.MatrixFormatError: Matrix is not symmetric: 1 != 0 (row 1, column 2)
    """
    rows = []
    for r, cells in enumerate(csv.reader(lines), start=1):
        if not cells or all(not c.strip() for c in cells):
            continue
        row = []
        for c, cell in enumerate(cells, start=1):
            try:
                value = float(cell)
            except ValueError:
                raise MatrixFormatError(f"Not a number: {cell.strip()!r}", row=r, col=c) from None
            if not np.isfinite(value):
                raise MatrixFormatError(f"Not a finite number: {cell.strip()!r}", row=r, col=c)
            row.append(value)
        rows.append((r, row))
    if not rows:
        raise MatrixFormatError("Empty matrix.")
    d = len(rows)
    for r, row in rows:
        if len(row) != d:
            raise MatrixFormatError(f"Expected {d} entries, found {len(row)}", row=r)
    a = np.array([row for _, row in rows])
    tol = SYMMETRY_TOL * max_norm(a)
    for i in range(d):
        for j in range(i + 1, d):
            if abs(a[i, j] - a[j, i]) > tol:
                raise MatrixFormatError(
                    f"Matrix is not symmetric: {a[i, j]:.12g} != {a[j, i]:.12g}", row=rows[i][0], col=j + 1
                )
    return a


def read_matrix(path):
    """
    Parameters
    ----------
    path: :class:`str` or :class:`~pathlib.Path`
        CSV file.

    Returns
    -------
    :class:`~numpy.ndarray`
    """
    with open(path, encoding="utf8", newline="") as f:
        return parse_matrix(f)


def write_matrix(path, a):
    """Write a matrix as CSV, one row per line, floats in round-trip form."""
    with open(path, "w", encoding="utf8", newline="") as f:
        writer = csv.writer(f)
        for row in np.asarray(a, dtype=float):
            writer.writerow([repr(float(x)) for x in row])


def _vector(values, name):
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatch(f"Field {name} must be a vector.")
    return arr


@dataclass
class DesignDocument:
    """
    Serializable design.

    Parameters
    ----------
    d: :class:`int`
        Dimension.
    k: :class:`int`
        Number of design vectors.
    criterion: :class:`str`
        Criterion used.
    objective: :class:`float`
        Achieved value.
    lower_bound: :class:`float`
        Certified lower bound.
    s_star: :class:`float`
        Budget spent.
    eigenvalues_before: :class:`list` of :class:`float`
        Spectrum of the prior.
    eigenvalues_after: :class:`list` of :class:`float`
        Spectrum after the design.
    X: :class:`list` of :class:`list` of :class:`float`
        d rows of k coordinates; column i is the i-th design vector.

    Examples
    --------

    >>> doc = DesignDocument.loads('{"d": 1, "k": 1, "criterion": "a-opt", "objective": 0.5, '
    ...     '"lower_bound": 0.5, "s_star": 1.0, "eigenvalues_before": [1.0], '
    ...     '"eigenvalues_after": [2.0], "X": [[1.0]]}')
    >>> doc.array
    array([[1.]])
    >>> DesignDocument.loads(doc.dumps()) == doc
    True
    """

    d: int
    k: int
    criterion: str
    objective: float
    lower_bound: float
    s_star: float
    eigenvalues_before: list
    eigenvalues_after: list
    X: list

    def __post_init__(self):
        self.d, self.k = int(self.d), int(self.k)
        self.objective, self.lower_bound, self.s_star = (
            float(self.objective),
            float(self.lower_bound),
            float(self.s_star),
        )
        for name in ("eigenvalues_before", "eigenvalues_after"):
            vec = _vector(getattr(self, name), name)
            if len(vec) != self.d:
                raise DimensionMismatch(f"Field {name} has {len(vec)} entries, expected d={self.d}.")
            setattr(self, name, [float(v) for v in vec])
        x = np.array(self.X, dtype=float, ndmin=2) if len(self.X) else np.zeros((self.d, self.k))
        if x.shape != (self.d, self.k):
            raise DimensionMismatch(f"Field X has shape {x.shape}, expected ({self.d}, {self.k}).")
        self.X = [[float(v) for v in row] for row in x]

    @property
    def array(self):
        """X as a d×k :class:`~numpy.ndarray`."""
        return np.array(self.X, dtype=float).reshape(self.d, self.k)

    @classmethod
    def from_result(cls, result):
        """
        Parameters
        ----------
        result: :class:`~eigendesign.designer.DesignResult`
            Output of :func:`~eigendesign.designer.optimal_design`.

        Returns
        -------
        :class:`~eigendesign.documents.DesignDocument`
        """
        return cls(
            d=result.d,
            k=result.k,
            criterion=result.criterion,
            objective=result.objective,
            lower_bound=result.lower_bound,
            s_star=result.s_star,
            eigenvalues_before=list(result.eigenvalues_before),
            eigenvalues_after=list(result.eigenvalues_after),
            X=result.X_star.tolist(),
        )

    def to_dict(self):
        return {"kind": DOCUMENT_KIND, **asdict(self)}

    @classmethod
    def from_dict(cls, data):
        """
        Raises
        ------
        :class:`~eigendesign.utils.errors.DimensionMismatch`
            If the arrays are inconsistent with d and k.
        :class:`KeyError`
            If a field is missing.
        """
        data = {key: value for key, value in data.items() if key != "kind"}
        missing = [name for name in cls.__dataclass_fields__ if name not in data]
        if missing:
            raise KeyError(f"Design document misses fields {missing}.")
        return cls(**{name: data[name] for name in cls.__dataclass_fields__})

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def loads(cls, text):
        return cls.from_dict(json.loads(text))

    def dump(self, path):
        """Write the document as JSON."""
        Path(path).write_text(self.dumps() + "\n", encoding="utf8")

    @classmethod
    def load(cls, path):
        """Read a document written by :meth:`dump`."""
        return cls.loads(Path(path).read_text(encoding="utf8"))
