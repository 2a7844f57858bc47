# Finite-dimensional algebras over GF(p): quivers, modules, complexes, silting
