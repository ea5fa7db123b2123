from typing import List, Optional

import numpy as np

from staged_reduction.common.finite_differences import directional_derivative
from staged_reduction.entities.bundle.connection_field import ConnectionField


def exterior_derivative_local(conn: ConnectionField, x: np.ndarray, xdot: np.ndarray, dx: np.ndarray,
                              partials: Optional[List[np.ndarray]] = None) -> np.ndarray:
    """
    dA(x)(xdot, dx) = D_xdot[A(.) dx](x) - D_dx[A(.) xdot](x)
    :param partials: x-derivatives of the connection matrix at x, when already available
    """
    xdot = conn.check_shape_vector(xdot, "xdot")
    dx = conn.check_shape_vector(dx, "dx")
    if partials is None:
        partials = conn.matrix_partials(x)
    return directional_derivative(partials, xdot) @ dx - directional_derivative(partials, dx) @ xdot


def curvature_local(conn: ConnectionField, x: np.ndarray, xdot: np.ndarray, dx: np.ndarray,
                    partials: Optional[List[np.ndarray]] = None) -> np.ndarray:
    """
    Reduced curvature of the connection in the trivialization:
        B(x)(xdot, dx) = dA(x)(xdot, dx) - [A(x) xdot, A(x) dx]
    """
    matrix = conn.matrix(x)
    return exterior_derivative_local(conn, x, xdot, dx, partials=partials) - \
        conn.alg.bracket(matrix @ np.asarray(xdot, dtype=float), matrix @ np.asarray(dx, dtype=float))
