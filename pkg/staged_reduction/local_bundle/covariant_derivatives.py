import numpy as np

from staged_reduction.entities.bundle.connection_field import ConnectionField


def covariant_derivative_adjoint(conn: ConnectionField, x: np.ndarray, xdot: np.ndarray, xi: np.ndarray,
                                 xidot: np.ndarray) -> np.ndarray:
    """ D xi / Dt = xidot - [A(x) xdot, xi] """
    alg = conn.alg
    return alg.check_vector(xidot, "xidot") - alg.bracket(conn.evaluate(x, xdot), xi)


def covariant_derivative_coadjoint(conn: ConnectionField, x: np.ndarray, xdot: np.ndarray, alpha: np.ndarray,
                                   alphadot: np.ndarray) -> np.ndarray:
    """ D alpha / Dt = alphadot + ad*_{A(x) xdot} alpha """
    alg = conn.alg
    return alg.check_vector(alphadot, "alphadot") + alg.ad_star(conn.evaluate(x, xdot), alpha)
