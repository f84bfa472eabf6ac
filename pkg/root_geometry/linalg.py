"""
Exact Gaussian elimination over ``fractions.Fraction``.

Matrices are small (rank at most 3 plus one row for barycentric systems), so
plain nested lists are used throughout.
"""
from fractions import Fraction


def _as_rows(matrix):
    return [[Fraction(value) for value in row] for row in matrix]


def row_echelon(matrix, rhs=None):
    """
    Reduce ``matrix`` (and ``rhs`` alongside) to row echelon form in place.

    Returns the list of free columns.
    """
    free_columns = []
    n_rows = len(matrix)
    if n_rows == 0:
        return free_columns
    n_cols = len(matrix[0])
    pivot_row = 0
    for pivot_col in range(n_cols):
        for i_row in range(pivot_row, n_rows):
            if matrix[i_row][pivot_col] != 0:
                break
        else:
            free_columns.append(pivot_col)
            continue
        if i_row != pivot_row:
            matrix[pivot_row], matrix[i_row] = matrix[i_row], matrix[pivot_row]
            if rhs is not None:
                rhs[pivot_row], rhs[i_row] = rhs[i_row], rhs[pivot_row]
        pivot = matrix[pivot_row][pivot_col]
        for r in range(pivot_row + 1, n_rows):
            factor = matrix[r][pivot_col]
            if factor == 0:
                continue
            factor = factor / pivot
            for c in range(pivot_col, n_cols):
                matrix[r][c] -= matrix[pivot_row][c] * factor
            if rhs is not None:
                rhs[r] -= rhs[pivot_row] * factor
        pivot_row += 1
        if pivot_row == n_rows:
            free_columns.extend(range(pivot_col + 1, n_cols))
            break
    return free_columns


def rank(matrix):
    if not matrix:
        return 0
    rows = _as_rows(matrix)
    return len(rows[0]) - len(row_echelon(rows))


def solve(matrix, rhs):
    """
    Unique exact solution of ``matrix @ x = rhs``, or ``None``.

    Overdetermined systems are accepted as long as they are consistent.
    """
    rows = _as_rows(matrix)
    values = [Fraction(value) for value in rhs]
    n_cols = len(rows[0])
    free_columns = row_echelon(rows, values)
    if free_columns:
        return None
    for r in range(n_cols, len(rows)):
        if values[r] != 0:
            return None
    solution = [Fraction(0)] * n_cols
    for r in range(n_cols - 1, -1, -1):
        s = values[r]
        for c in range(r + 1, n_cols):
            s -= rows[r][c] * solution[c]
        solution[r] = s / rows[r][r]
    return tuple(solution)


def mat_mul(left, right):
    return tuple(
        tuple(sum((left[i][t] * right[t][j] for t in range(len(right))), Fraction(0))
              for j in range(len(right[0])))
        for i in range(len(left))
    )


def mat_vec(matrix, vector):
    return tuple(
        sum((Fraction(a) * Fraction(b) for a, b in zip(row, vector)), Fraction(0))
        for row in matrix
    )


def identity_matrix(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
