"""Homotopical invariants of contact (+-1)-surgery diagrams."""
