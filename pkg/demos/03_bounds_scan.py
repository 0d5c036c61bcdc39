"""
Checking every bound on the catalog
===================================

``verify_group`` computes all invariants of a group and evaluates each
inequality exactly.  Here we scan everything up to order 16 and print the
nonabelian groups with the smallest margin on the inversion bound
(abelian groups all sit at exactly 12).
"""

from fractions import Fraction

from groupbounds import bounds, catalog

reports = [bounds.verify_group(catalog.construct(s)) for s in catalog.default_scan_set(16)]
print(len(reports), "groups, all passed:", all(r.all_passed for r in reports))


def margin(report):
    v = next(v for v in report.verdicts if v.name == "inversion_cp")
    return v.lhs / v.rhs


nonabelian = [r for r in reports if r.cp < 1]
for r in sorted(nonabelian, key=margin)[:5]:
    print(f"{r.name:<24} cp = {str(r.cp):<6} lambda_-1 = {str(r.lambda_m1):<5} cp / bound = {margin(r)}")

# the bound formulas on their own, at a few values of rho
for rho in [Fraction(1), Fraction(3, 4), Fraction(1, 2), Fraction(1, 10)]:
    sq = bounds.squaring_bounds(rho)
    print(f"rho = {rho}: inversion cp >= {bounds.inversion_cp_lower(rho)}, "
          f"squaring cp >= {sq.cp_lower}, squaring dl <= {sq.dl_upper}")
