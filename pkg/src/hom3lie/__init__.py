"""Exact arithmetic for 3-Hom-Lie algebras, coalgebras and bialgebras.

Modules:

- ``tensorcore``: exact dense tensors on ``L^{⊗k}`` and slot operators;
- ``homlie``: brackets, twist maps and the algebra identities;
- ``repcoh``: representations, cochains and coboundaries;
- ``coalgebra``: cobrackets and the dual identities;
- ``ybe``: r-matrices and the classical Hom-Yang-Baxter bracket;
- ``bialgebra``: coboundary bialgebras induced by an r-matrix;
- ``solver``: exact-verified search for solutions;
- ``examples``, ``io``, ``cli``: bundled data, JSON documents, command line.
"""

__version__ = "0.1.0"
