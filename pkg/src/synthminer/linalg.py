"""Exact rational linear algebra for the linear-dependency rules.

Everything here runs on fractions.Fraction. Floating point is never used:
the rule preconditions compare against thresholds and a float rank test
would make accept/reject decisions order-dependent near the boundary.
"""

from fractions import Fraction


def solve_combination(columns, target):
    """Solve sum_j x_j * columns[j] = target over the rationals.

    columns is a list of equal-length vectors (ints or Fractions).
    Returns a list of Fraction coefficients, or None if target is not in
    the span. Free variables are fixed at zero, so the witness is the
    particular solution of the row-reduced system.
    """
    n_rows = len(target)
    n_cols = len(columns)
    for col in columns:
        if len(col) != n_rows:
            raise ValueError("column length does not match target length")
    aug = [
        [Fraction(columns[j][i]) for j in range(n_cols)] + [Fraction(target[i])]
        for i in range(n_rows)
    ]
    pivot_cols = []
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, n_rows) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(n_rows):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivot_cols.append(col)
        row += 1
        if row == n_rows:
            break
    for r in range(row, n_rows):
        if aug[r][n_cols] != 0:
            return None
    witness = [Fraction(0)] * n_cols
    for k, col in enumerate(pivot_cols):
        witness[col] = aug[k][n_cols]
    return witness


def is_linear_combination(columns, target):
    """Span-membership test with witness.

    Returns (True, coefficients) if target lies in the rational span of
    the given columns, else (False, None). The zero vector is always a
    (zero-witness) combination, even of an empty column list.
    """
    if not columns:
        if all(x == 0 for x in target):
            return True, []
        return False, None
    witness = solve_combination(columns, target)
    if witness is None:
        return False, None
    return True, witness


def nonneg_combination(columns, target):
    """Solve sum_j x_j * columns[j] = target with all x_j >= 0.

    Exact phase-one simplex with Bland's rule (guarantees termination).
    Returns the coefficient list or None when infeasible. Problem sizes
    here are tiny (one variable per place of a desk-scale net).
    """
    m = len(target)
    n = len(columns)
    if n == 0:
        return [] if all(x == 0 for x in target) else None
    rows = [[Fraction(columns[j][i]) for j in range(n)] for i in range(m)]
    rhs = [Fraction(target[i]) for i in range(m)]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]
    # Tableau over n structural + m artificial variables; basis starts
    # as the artificials. Objective: minimise the sum of artificials.
    total = n + m
    tab = [rows[i] + [Fraction(int(k == i)) for k in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # Reduced-cost row z_j - c_j for the phase-one objective.
    obj = [sum(tab[i][j] for i in range(m)) for j in range(n)]
    obj += [Fraction(0)] * m
    obj_rhs = sum(rhs)
    while True:
        entering = next((j for j in range(total) if obj[j] > 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            if tab[i][entering] > 0:
                ratio = tab[i][total] / tab[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            # Unbounded phase-one objective cannot happen (bounded below
            # by zero); defensive guard.
            return None
        pv = tab[leaving][entering]
        tab[leaving] = [x / pv for x in tab[leaving]]
        for i in range(m):
            if i != leaving and tab[i][entering] != 0:
                f = tab[i][entering]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leaving])]
        f = obj[entering]
        obj = [a - f * b for a, b in zip(obj, tab[leaving][:total])]
        obj_rhs -= f * tab[leaving][total]
        basis[leaving] = entering
    if obj_rhs != 0:
        return None
    witness = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            witness[var] = tab[i][total]
    return witness
