"""Avoidance machinery for patterns and formulas with reversal.

Representation conventions used across the package:

* a concrete word is a ``str`` of digit characters (``"0120"``), alphabet
  sizes never exceed 10;
* a pattern is a ``str`` of letters where a lowercase letter is a variable
  and the corresponding uppercase letter is its mirrored (barred) form;
  digits inside a pattern are literal constants;
* a formula is a set of patterns (its fragments), held canonically ordered
  by :class:`revpat.formulas.Formula`.
"""

from revpat.formulas import Formula, parse_formula

__all__ = ["Formula", "parse_formula"]
