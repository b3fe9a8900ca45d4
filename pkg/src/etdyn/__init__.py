"""Dynamical invariants of algebraic Z^3-actions presented by <f(u1,u2), g(u3)>."""
