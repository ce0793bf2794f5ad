"""Exact q-series toolkit for M2-rank differences of partitions without repeated odd parts."""

from .series import QSeries

__all__ = ["QSeries"]
