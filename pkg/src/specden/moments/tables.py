"""
Moment and expansion-coefficient tables with JSON and CSV serialization.

Exact values serialize losslessly: rationals as ``"p/q"`` strings, rational
functions of ``N`` as ``{"num": [...], "den": [...]}``.
"""

import io
import csv
import json
import logging
from fractions import Fraction

from specden.errors import InvalidSpecError
from specden.exactq import RatFun
from specden.diffop import EnsembleSpec

log = logging.getLogger(__name__)

SHAPES = {
    "gaussian": "m_2k = sum_l M[k,l] N^(k-l+1)",
    "laguerre": "m_k = sum_l M[k,l] N^(k-l+1)",
    "jacobi": "m_k = sum_l M[k,l] N^(1-l)",
}


def value_to_json(value):
    if getattr(value, "is_ratfun", False):
        return value.to_strings()
    return str(value)


def value_from_json(data):
    if isinstance(data, dict):
        return RatFun.from_strings(data)
    return Fraction(data)


def dumps(payload):
    """
    Serialize deterministically.

    Args:
        payload (dict): JSON-ready data.

    Returns:
        str: Sorted, indented JSON text with a trailing newline.
    """
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _load(text, kind):
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise InvalidSpecError(f"Cannot parse {kind} table: {exc}") from exc
    if data.get("kind") != kind:
        raise InvalidSpecError(f"Expected a {kind} table, found {data.get('kind')!r}")
    return data


class MomentTable:
    """
    Exact moments ``m_k`` of one ensemble.

    Attributes:
        spec (EnsembleSpec): The ensemble.
        values (dict): ``k -> m_k`` (negative ``k`` allowed).
        provenance (str): How the values were produced.
    """

    def __init__(self, spec, values, provenance=""):
        self.spec = spec
        self.values = dict(sorted(values.items()))
        self.provenance = provenance

    def __getitem__(self, k):
        return self.values[k]

    def __contains__(self, k):
        return k in self.values

    def __len__(self):
        return len(self.values)

    @property
    def k_min(self):
        return min(self.values)

    @property
    def k_max(self):
        return max(self.values)

    def as_list(self):
        """
        The non-negative moments in order.

        Returns:
            list: ``[m_0, m_1, ...]`` up to the first gap.
        """
        out = []
        k = 0
        while k in self.values:
            out.append(self.values[k])
            k += 1
        return out

    def difference(self, k):
        """
        ``m_k - m_{k+1}``.

        Args:
            k (int): The index.

        Returns:
            object: The exact difference.
        """
        return self.values[k] - self.values[k + 1]

    def at_n(self, n):
        """
        Evaluate a symbolic table at a matrix size.

        Args:
            n (int): The value of ``N``.

        Returns:
            MomentTable: A numeric table.
        """
        values = {
            k: v.evaluate(n) if getattr(v, "is_ratfun", False) else v
            for k, v in self.values.items()
        }
        return MomentTable(self.spec.with_n(n), values, self.provenance)

    def __eq__(self, other):
        if not isinstance(other, MomentTable):
            return NotImplemented
        return (self.spec, self.values) == (other.spec, other.values)

    def to_dict(self):
        return {
            "kind": "moments",
            "spec": self.spec.to_dict(),
            "provenance": self.provenance,
            "values": {str(k): value_to_json(v) for k, v in self.values.items()},
        }

    def to_json(self):
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        """
        Rebuild a table written by :py:meth:`to_json`.

        Args:
            text (str): JSON text.

        Returns:
            MomentTable: The table.

        Raises:
            InvalidSpecError: If the text is not a moment table.
        """
        data = _load(text, "moments")
        values = {int(k): value_from_json(v) for k, v in data["values"].items()}
        return cls(EnsembleSpec.from_dict(data["spec"]), values, data.get("provenance", ""))

    def to_csv(self):
        """
        CSV text with columns ``k,value``.

        Returns:
            str: The CSV text.
        """
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "value"])
        for k, v in self.values.items():
            writer.writerow([k, str(v)])
        return buf.getvalue()

    def __repr__(self):
        return f"MomentTable({self.spec.family}, beta={self.spec.beta}, k={self.k_min}..{self.k_max})"


class CoeffTable:
    """
    Coefficients ``M[k, l]`` of the moments' expansion in powers of ``N``.

    Absent entries are zero. The expansion shape depends on the family,
    see :py:data:`SHAPES`.
    """

    def __init__(self, spec, entries, k_max, l_max):
        self.spec = spec
        self.shape = spec.family
        self.entries = {key: v for key, v in entries.items() if v != 0}
        self.k_max = k_max
        self.l_max = l_max

    def get(self, k, l):
        """
        ``M[k, l]``, zero outside the stored range.

        Args:
            k (int): Moment index.
            l (int): Expansion order.

        Returns:
            Fraction: The coefficient.
        """
        return self.entries.get((k, l), Fraction(0))

    __call__ = get

    def __eq__(self, other):
        if not isinstance(other, CoeffTable):
            return NotImplemented
        return (self.spec, self.entries, self.k_max, self.l_max) == (
            other.spec,
            other.entries,
            other.k_max,
            other.l_max,
        )

    def to_dict(self):
        return {
            "kind": "coefficients",
            "spec": self.spec.to_dict(),
            "shape": SHAPES[self.shape],
            "k_max": self.k_max,
            "l_max": self.l_max,
            "entries": {f"{k},{l}": str(v) for (k, l), v in sorted(self.entries.items())},
        }

    def to_json(self):
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        """
        Rebuild a table written by :py:meth:`to_json`.

        Args:
            text (str): JSON text.

        Returns:
            CoeffTable: The table.

        Raises:
            InvalidSpecError: If the text is not a coefficient table.
        """
        data = _load(text, "coefficients")
        entries = {}
        for key, value in data["entries"].items():
            k, l = key.split(",")
            entries[(int(k), int(l))] = Fraction(value)
        return cls(EnsembleSpec.from_dict(data["spec"]), entries, data["k_max"], data["l_max"])

    def to_csv(self):
        """
        CSV text with columns ``k,l,value`` covering the full index range.

        Returns:
            str: The CSV text.
        """
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "l", "value"])
        for k in range(self.k_max + 1):
            for l in range(self.l_max + 1):
                writer.writerow([k, l, str(self.get(k, l))])
        return buf.getvalue()

    def __repr__(self):
        return f"CoeffTable({self.shape}, beta={self.spec.beta}, k<={self.k_max}, l<={self.l_max})"
