"""Exact Todd-operator interpolation polynomials f_z for totally unimodular
vector configurations, with the box spline, multivariate spline and vector
partition function needed to check them."""

__version__ = "0.1.0"
