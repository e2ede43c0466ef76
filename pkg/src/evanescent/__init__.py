"""Peirce polynomials and evanescent identities for baric algebras."""

from .magma import (
    Monomial,
    Variable,
    X,
    Y,
    Z,
    children,
    degree_in,
    leaf,
    left_iterate,
    monomials_of_type,
    plenary_power,
    principal_power,
    product,
    type_vector,
    w_number,
)
from .poly import Polynomial, standard_baric_identity
from .peirce import (
    EvanescenceReport,
    Identity,
    PeircePolynomial,
    delta,
    is_evanescent,
    linearize,
    make_identity,
    peirce_recursive,
    peirce_tree,
)
from .syntax import format_monomial, format_polynomial, parse, parse_monomial
from .trainsgen import generate_train_basis, reduce, solve_Pw, train_identity
from .homgen import generate_homogeneous, nullspace, peirce_matrix
from .baric import (
    BaricAlgebra,
    MutationSpec,
    char_poly,
    evaluate,
    left_mult_matrix,
    load_algebra,
    make_mutation,
    spectrum_algebra,
    verify_identity,
    weighted_evaluate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
