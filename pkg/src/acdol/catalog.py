"""Built-in example algebras.

Each entry is an input document (the same JSON-ready structure accepted by
``docio.parse_document``); indices inside documents are 1-based.
"""

import copy

_J_PAIRS_4 = [["0", "-1", "0", "0"],
              ["1", "0", "0", "0"],
              ["0", "0", "0", "-1"],
              ["0", "0", "1", "0"]]

_J_PAIRS_6 = [["0", "-1", "0", "0", "0", "0"],
              ["1", "0", "0", "0", "0", "0"],
              ["0", "0", "0", "-1", "0", "0"],
              ["0", "0", "1", "0", "0", "0"],
              ["0", "0", "0", "0", "0", "-1"],
              ["0", "0", "0", "0", "1", "0"]]

_BUILTINS = {
    # 4-dim filiform nilpotent: [X1, X2] = X3, [X1, X3] = X4
    "filiform-J": {
        "name": "filiform-J",
        "dim": 4,
        "basis": ["X1", "X2", "X3", "X4"],
        "brackets": [
            {"i": 1, "j": 2, "coeffs": {"3": "1"}},
            {"i": 1, "j": 3, "coeffs": {"4": "1"}},
        ],
        "J": _J_PAIRS_4,
    },
    "filiform-Jprime": {
        "name": "filiform-Jprime",
        "dim": 4,
        "basis": ["X1", "X2", "X3", "X4"],
        "brackets": [
            {"i": 1, "j": 2, "coeffs": {"3": "1"}},
            {"i": 1, "j": 3, "coeffs": {"4": "1"}},
        ],
        # J' X1 = X4, J' X2 = X3
        "J": [["0", "0", "0", "-1"],
              ["0", "0", "-1", "0"],
              ["0", "1", "0", "0"],
              ["1", "0", "0", "0"]],
    },
    # Kodaira-Thurston: Heisenberg x R, [X, Y] = -Z
    "kt-J": {
        "name": "kt-J",
        "dim": 4,
        "basis": ["X", "Y", "Z", "W"],
        "brackets": [
            {"i": 1, "j": 2, "coeffs": {"3": "-1"}},
        ],
        # J W = X, J Z = Y (non-integrable)
        "J": [["0", "0", "0", "1"],
              ["0", "0", "1", "0"],
              ["0", "-1", "0", "0"],
              ["-1", "0", "0", "0"]],
    },
    "kt-Jprime": {
        "name": "kt-Jprime",
        "dim": 4,
        "basis": ["X", "Y", "Z", "W"],
        "brackets": [
            {"i": 1, "j": 2, "coeffs": {"3": "-1"}},
        ],
        # J' X = Y, J' Z = W (integrable)
        "J": [["0", "-1", "0", "0"],
              ["1", "0", "0", "0"],
              ["0", "0", "0", "-1"],
              ["0", "0", "1", "0"]],
    },
    # su(2) + su(2) with the swap structure J X1 = X2; frame seeded on the
    # second factor reproduces the standard k = 1+i structure constants.
    "su2su2-nk": {
        "name": "su2su2-nk",
        "dim": 6,
        "basis": ["X1", "Y1", "Z1", "X2", "Y2", "Z2"],
        "brackets": [
            {"i": 1, "j": 2, "coeffs": {"3": "2"}},
            {"i": 2, "j": 3, "coeffs": {"1": "2"}},
            {"i": 3, "j": 1, "coeffs": {"2": "2"}},
            {"i": 4, "j": 5, "coeffs": {"6": "2"}},
            {"i": 5, "j": 6, "coeffs": {"4": "2"}},
            {"i": 6, "j": 4, "coeffs": {"5": "2"}},
        ],
        "J": [["0", "0", "0", "-1", "0", "0"],
              ["0", "0", "0", "0", "-1", "0"],
              ["0", "0", "0", "0", "0", "-1"],
              ["1", "0", "0", "0", "0", "0"],
              ["0", "1", "0", "0", "0", "0"],
              ["0", "0", "1", "0", "0", "0"]],
        "frame_seeds": [4, 5, 6],
    },
    "abelian-m2": {
        "name": "abelian-m2",
        "dim": 4,
        "basis": ["e1", "e2", "e3", "e4"],
        "brackets": [],
        "J": _J_PAIRS_4,
    },
    "abelian-m3": {
        "name": "abelian-m3",
        "dim": 6,
        "basis": ["e1", "e2", "e3", "e4", "e5", "e6"],
        "brackets": [],
        "J": _J_PAIRS_6,
    },
}


class UnknownExampleError(KeyError):
    pass


def builtin_names():
    return sorted(_BUILTINS)


def builtin(name):
    """The named example as a fresh input document."""
    try:
        doc = _BUILTINS[name]
    except KeyError:
        raise UnknownExampleError(
            "unknown example %r; available: %s"
            % (name, ", ".join(builtin_names()))) from None
    return copy.deepcopy(doc)
