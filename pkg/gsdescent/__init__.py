"""gsdescent: explicit descent from F_{q^2} to F_q of Artin-Schreier extensions and of
the completed Garcia-Stichtenoth tower.

This package provides modules for finite field arithmetic, linearized polynomials,
the descent tables and tower equations, and bilinear-complexity bounds, but the
primary interface is CLI-based and lives in scripts/gsdescent.py"""
