import numpy as np

HIDDEN_KEYS = {"diagnostics", "history"}


def _is_empty(value):
    if isinstance(value, np.ndarray):
        return value.size == 0
    return value is None or (isinstance(value, (list, tuple, dict, str)) and not value)


def _short(value):
    if isinstance(value, np.ndarray):
        if value.size <= 6:
            return np.array2string(value, precision=6, separator=", ")
        return f"array(shape={value.shape})"
    return repr(value)


class LazyRepr:
    """
    MixIn that provides a clean repr for dataclasses.

    Hides empty fields and fields in HIDDEN_KEYS from the repr string.
    Private attributes (starting with '_') are also hidden. Large arrays are
    summarized by their shape.

    Examples
    --------

    >>> from dataclasses import dataclass
    >>> @dataclass(repr=False)
    ... class Point(LazyRepr):
    ...     x: float
    ...     tags: list
    ...     coords: np.ndarray
    >>> Point(1.0, [], np.zeros(10))
    Point(x=1.0, coords=array(shape=(10,)))
    """

    def __repr__(self):
        kws = [
            f"{key}={_short(value)}"
            for key, value in self.__dict__.items()
            if not _is_empty(value) and key not in HIDDEN_KEYS and not key.startswith("_")
        ]
        return f"{type(self).__name__}({', '.join(kws)})"


def get_classes(root, key="name", recurse=False):
    """
    Parameters
    ----------
    root: :class:`class`
        Starting class (can be abstract).
    key: :class:`str`, default='name'
        Attribute to look-up
    recurse: bool, default=False
        Recursively traverse subclasses.

    Returns
    -------
    :class:`dict`
        Dictionaries of all subclasses that have a key attribute (as in class attribute `key`).
    """
    result = {getattr(c, key): c for c in root.__subclasses__() if getattr(c, key, None)}
    if recurse:
        for c in root.__subclasses__():
            result.update(get_classes(c, key=key, recurse=True))
    return result


def fmt(x, digits=12):
    """
    Deterministic text rendering of a real number.

    Parameters
    ----------
    x: :class:`float`
        Number to render.
    digits: :class:`int`, default=12
        Significant digits.

    Returns
    -------
    :class:`str`

    Examples
    --------

    >>> fmt(1 / 3)
    '0.333333333333'
    >>> fmt(-0.0)
    '0'
    >>> fmt(2.0)
    '2'
    """
    x = float(x)
    if x == 0:
        return "0"
    return f"{x:.{digits}g}"
