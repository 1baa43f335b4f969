from fractions import Fraction
from math import prod

import numpy as np

from .operators import rational


class IndexingError(RuntimeError):
    "Raised when an index or stride layout does not fit a tensor's shape."
    pass


def index_to_position(index, strides):
    """
    Storage position of a multi-index under the given strides.

    Args:
        index (sequence of int): one index per dimension
        strides (sequence of int): storage step of each dimension

    Returns:
        int : offset into flat storage
    """
    return sum(int(i) * int(s) for i, s in zip(index, strides))


def count(position, shape, out_index):
    """
    Row-major multi-index of the `position`-th entry of `shape`, written into
    `out_index`. Positions 0 .. size-1 visit every index exactly once.
    """
    rest = int(position)
    for axis in reversed(range(len(shape))):
        rest, out_index[axis] = divmod(rest, shape[axis])


def strides_from_shape(shape):
    "Row-major strides: the last axis moves by 1."
    strides = []
    step = 1
    for extent in reversed(shape):
        strides.append(step)
        step *= extent
    return tuple(reversed(strides))


def _storage(values, size):
    if len(values) != size:
        raise IndexingError(f"Storage of length {len(values)} for size {size}.")
    out = np.empty(size, dtype=object)
    out[:] = [rational(v) for v in values]
    return out


class TensorData:
    """
    Strided storage of exact rationals.

    Structure constants, action tensors and braiding tensors all live in one of
    these. Storage is a flat numpy object array of :class:`Fraction`.

    Attributes:
        shape (tuple): logical shape
        strides (tuple): storage strides for each dimension
        size (int): number of entries
    """

    def __init__(self, storage, shape, strides=None):
        self.shape = tuple(int(s) for s in shape)
        self.size = prod(self.shape)
        if isinstance(storage, np.ndarray) and storage.dtype == object and storage.ndim == 1:
            self._storage = storage
        else:
            self._storage = _storage(list(np.asarray(storage, dtype=object).ravel()), self.size)
        self.strides = strides_from_shape(self.shape) if strides is None else tuple(strides)
        if len(self.strides) != len(self.shape):
            raise IndexingError(f"Strides {self.strides} do not fit shape {self.shape}.")
        self.dims = len(self.shape)
        if len(self._storage) != self.size:
            raise IndexingError(
                f"Storage of length {len(self._storage)} cannot hold shape {self.shape}."
            )

    @classmethod
    def zeros(cls, shape):
        return cls([Fraction(0)] * prod(shape), shape)

    @classmethod
    def from_numpy(cls, array):
        "Copy an object ndarray of rationals into contiguous storage."
        array = np.asarray(array, dtype=object)
        return cls(list(array.ravel()), array.shape)

    @classmethod
    def from_sparse(cls, entries, shape, one_based=False):
        """
        Build a tensor from sparse ``(index..., value)`` entries.

        Repeated indices accumulate.

        Args:
            entries (iterable): tuples of ``len(shape)`` indices followed by a value
            shape (tuple): tensor shape
            one_based (bool): indices in `entries` start at 1

        Returns:
            :class:`TensorData` : tensor with omitted entries zero
        """
        out = cls.zeros(shape)
        offset = 1 if one_based else 0
        for entry in entries:
            entry = tuple(entry)
            if len(entry) != len(shape) + 1:
                raise IndexingError(
                    f"Sparse entry {entry} needs {len(shape)} indices and a value."
                )
            index = tuple(int(i) - offset for i in entry[:-1])
            out.set(index, out.get(index) + rational(entry[-1]))
        return out

    def is_contiguous(self):
        "Strides never increase from outer to inner axes."
        return all(a >= b for a, b in zip(self.strides, self.strides[1:]))

    def index(self, index):
        "Storage position of `index`, with bounds checked."
        index = (index,) if isinstance(index, int) else tuple(index)
        if len(index) != self.dims:
            raise IndexingError(f"Index {index} has {len(index)} axes, shape {self.shape} has {self.dims}.")
        for axis, i in enumerate(index):
            if not 0 <= i < self.shape[axis]:
                raise IndexingError(f"Index {index} outside shape {self.shape}.")
        return index_to_position(index, self.strides)

    def indices(self):
        "Every index in row-major order."
        out_index = [0] * self.dims
        for position in range(self.size):
            count(position, self.shape, out_index)
            yield tuple(out_index)

    def get(self, key):
        return self._storage[self.index(key)]

    def set(self, key, val):
        self._storage[self.index(key)] = rational(val)

    def permute(self, *order):
        """
        View with axes reordered; storage is shared.

        Args:
            order (ints): new position of each axis, a permutation of range(dims)

        Returns:
            :class:`TensorData`
        """
        if sorted(order) != list(range(self.dims)):
            raise IndexingError(f"{order} is not a permutation of the axes of {self.shape}.")
        return TensorData(
            self._storage,
            tuple(self.shape[i] for i in order),
            tuple(self.strides[i] for i in order),
        )

    def to_numpy(self):
        "Contiguous object array of shape `shape`."
        out = np.empty(self.shape, dtype=object)
        for index in self.indices():
            out[index] = self.get(index)
        return out

    def sparse_entries(self, one_based=False):
        "Nonzero entries as ``(index..., value)`` tuples in row-major order."
        offset = 1 if one_based else 0
        for index in self.indices():
            v = self.get(index)
            if v != 0:
                yield tuple(i + offset for i in index) + (v,)

    def is_zero(self):
        return all(v == 0 for v in self._storage)

    def __eq__(self, other):
        if not isinstance(other, TensorData) or other.shape != self.shape:
            return False
        return all(self.get(ix) == other.get(ix) for ix in self.indices())

    def __hash__(self):
        return hash((self.shape, tuple(self.get(ix) for ix in self.indices())))
