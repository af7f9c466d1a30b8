"""Bit-exact JSON algebra files and report payloads.

Rationals are serialized as "p/q" strings (bare "p" when the denominator is
one) so no float ever enters a file.  Degree vectors are the free
coordinates followed by the torsion residues.  Loading validates the
bicharacter axioms and the full algebra axioms; a failing file is rejected
with the offending report attached.
"""

import json
import sys
from fractions import Fraction

from .algebra import ColorAlgebra, validate_algebra
from .errors import AlgebraValidationError, FormatError
from .grading import Bicharacter, GradingGroup, validate_bicharacter
from .linalg import Matrix


def parse_rational(value):
    """Parse "p/q" or "p" (string or int) into an exact Fraction."""
    if isinstance(value, bool) or isinstance(value, float):
        raise FormatError(f"rationals must be strings or integers, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise FormatError(f"bad rational {value!r}: {exc}") from None


def format_rational(fr):
    fr = Fraction(fr)
    if fr.denominator == 1:
        return str(fr.numerator)
    return f"{fr.numerator}/{fr.denominator}"


def algebra_to_dict(A):
    brackets = []
    for t in A.stored_tuples():
        value = {str(j): format_rational(c) for j, c in sorted(A.constants[t].items())}
        brackets.append({"args": list(t), "value": value})
    return {
        "name": A.name,
        "arity": A.arity,
        "group": {"free_rank": A.group.free_rank, "torsion": list(A.group.torsion)},
        "bicharacter": [[format_rational(x) for x in row] for row in A.eps.table],
        "basis": [{"name": nm, "degree": list(deg.free + deg.torsion)}
                  for nm, deg in A.basis],
        "alpha": [[format_rational(x) for x in row] for row in A.alpha.data],
        "brackets": brackets,
    }


def dict_to_algebra(doc, validate=True):
    try:
        name = doc["name"]
        arity = int(doc["arity"])
        gdoc = doc["group"]
        group = GradingGroup(int(gdoc["free_rank"]),
                             tuple(int(m) for m in gdoc.get("torsion", [])))
        eps = Bicharacter(group, [[parse_rational(x) for x in row]
                                  for row in doc["bicharacter"]])
        basis = []
        names = set()
        for b in doc["basis"]:
            nm = str(b["name"])
            if nm in names:
                raise FormatError(f"duplicate basis name {nm!r}")
            names.add(nm)
            basis.append((nm, group.from_vector(b["degree"])))
        alpha = Matrix([[parse_rational(x) for x in row] for row in doc["alpha"]])
        constants = {}
        for entry in doc.get("brackets", []):
            t = tuple(int(i) for i in entry["args"])
            if t in constants:
                raise FormatError(f"duplicate bracket tuple {t}")
            constants[t] = {int(j): parse_rational(c)
                            for j, c in entry["value"].items()}
    except KeyError as exc:
        raise FormatError(f"missing field {exc}") from None
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed algebra file: {exc}") from None
    A = ColorAlgebra(name, arity, group, eps, basis, alpha, constants)
    if validate:
        report = validate_bicharacter(eps)
        report.merge(validate_algebra(A))
        if not report.ok:
            raise AlgebraValidationError(
                f"algebra {A.name!r} fails validation", report)
    return A


def dumps(A):
    return json.dumps(algebra_to_dict(A), indent=2, sort_keys=True) + "\n"


def save(A, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(A))


def loads(text, validate=True):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("algebra file must be a JSON object")
    return dict_to_algebra(doc, validate=validate)


def load(path, validate=True):
    """Load an algebra file; "-" reads standard input."""
    if path == "-":
        return loads(sys.stdin.read(), validate=validate)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    return loads(text, validate=validate)


def matrix_to_grid(M):
    return [[format_rational(x) for x in row] for row in M.data]


def vector_to_list(v):
    return [format_rational(x) for x in v]


def parse_matrix(grid):
    return Matrix([[parse_rational(x) for x in row] for row in grid])


def parse_vector(lst):
    return [parse_rational(x) for x in lst]
