"""Concrete constructions used in demos, scripts and golden tests."""

from .model import AFLeaf, BaseK, FieldLeaf, MaximalIdealData, Pullback


def localized_line(n: int) -> AFLeaf:
    """k(X1..Xn)[Z]_(Z): a DVR whose residue field k(X1..Xn) has tdeg n."""
    return AFLeaf(n + 1, 1, MaximalIdealData(1, n, unique=True))


def semilocal_plane() -> AFLeaf:
    """S^-1 K[X, Y] with S the complement of (X) u (X - 1, Y), K/k algebraic.

    Two maximal ideals: M = (X) of height 1 and (X - 1, Y) of height 2.
    """
    return AFLeaf(2, 2, MaximalIdealData(1, 1, unique=False))


# k(X,Y)[Z]_(Z) -> k(X,Y), pulled back along k(X)
DVR_OVER_SUBFIELD = Pullback(localized_line(2), FieldLeaf(1))
# k(X)[Y]_(Y) -> k(X), pulled back along k: a one-dimensional PVD
PVD_OVER_K = Pullback(localized_line(1), BaseK())
# k(X,Y,Z)[T]_(T) -> k(X,Y,Z), pulled back along the PVD above
PVD_TOWER = Pullback(localized_line(3), PVD_OVER_K)
# semilocal plane -> K(Y), pulled back along k(Y); an AF-domain
AF_PULLBACK = Pullback(semilocal_plane(), FieldLeaf(1))
