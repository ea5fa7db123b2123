from __future__ import annotations

from typing import Dict, Optional

import numpy as np


def rolling_direction(phi: float) -> np.ndarray:
    """ u(phi) = (-cos phi, -sin phi) """
    return np.array([-np.cos(phi), -np.sin(phi)])


class DiskState:
    def __init__(self, theta: float, phi: float, thetadot: float, phidot: float, eta01: float,
                 eta12: Optional[np.ndarray] = None, r: float = 1.0) -> None:
        """
        Reduced state of Euler's disk
        :param theta: tilt angle in (0, pi/2) in rad
        :param phi: heading angle in rad
        :param thetadot: in rad/s
        :param phidot: in rad/s
        :param eta01: spin velocity in rad/s
        :param eta12: velocity of the center of the contact disk in m/s; when None it is set by the rolling
        constraint eta12 = eta01 r u(phi)
        :param r: radius used to complete eta12
        """
        self.theta = float(theta)
        self.phi = float(phi)
        self.thetadot = float(thetadot)
        self.phidot = float(phidot)
        self.eta01 = float(eta01)
        self.eta12 = self.eta01 * float(r) * rolling_direction(self.phi) if eta12 is None \
            else np.array(eta12, dtype=float)
        self._validate()

    def _validate(self) -> None:
        if self.eta12.shape != (2,):
            raise ValueError(f"eta12 should have 2 components, got shape {self.eta12.shape}")
        if not np.all(np.isfinite(self.to_vector())):
            raise ValueError("disk state must be finite")

    def constraint_residual(self, r: float) -> float:
        """ |eta12 - eta01 r u(phi)| """
        return float(np.linalg.norm(self.eta12 - self.eta01 * r * rolling_direction(self.phi)))

    def to_vector(self) -> np.ndarray:
        """ (theta, phi, thetadot, phidot, eta01, eta12_0, eta12_1) """
        return np.concatenate([[self.theta, self.phi, self.thetadot, self.phidot, self.eta01], self.eta12])

    @staticmethod
    def from_vector(y: np.ndarray) -> DiskState:
        return DiskState(theta=y[0], phi=y[1], thetadot=y[2], phidot=y[3], eta01=y[4], eta12=y[5:7])

    def to_json(self) -> Dict:
        return {"theta": self.theta, "phi": self.phi, "thetadot": self.thetadot, "phidot": self.phidot,
                "eta01": self.eta01, "eta12": self.eta12.tolist()}

    @staticmethod
    def from_json(state_dict: Dict, r: float = 1.0) -> DiskState:
        return DiskState(theta=state_dict["theta"], phi=state_dict["phi"], thetadot=state_dict["thetadot"],
                         phidot=state_dict["phidot"], eta01=state_dict["eta01"], eta12=state_dict.get("eta12"), r=r)

    def __repr__(self):
        return f"DiskState({self.to_json()})"


class FullDiskState:
    def __init__(self, theta: float, phi: float, psi: float, x: np.ndarray, thetadot: float, phidot: float,
                 psidot: float, xdot: np.ndarray, lam: Optional[np.ndarray] = None) -> None:
        """
        State of Euler's disk on the full configuration space (theta, phi, psi, x)
        :param psi: spin angle in rad
        :param x: position of the contact point in the plane in m
        :param xdot: velocity of the contact point in m/s
        :param lam: constraint multipliers in N (filled in by the oracle)
        """
        self.theta = float(theta)
        self.phi = float(phi)
        self.psi = float(psi)
        self.x = np.array(x, dtype=float)
        self.thetadot = float(thetadot)
        self.phidot = float(phidot)
        self.psidot = float(psidot)
        self.xdot = np.array(xdot, dtype=float)
        self.lam = np.zeros(2) if lam is None else np.array(lam, dtype=float)
        self._validate()

    def _validate(self) -> None:
        for name, value in [("x", self.x), ("xdot", self.xdot), ("lam", self.lam)]:
            if value.shape != (2,):
                raise ValueError(f"{name} should have 2 components, got shape {value.shape}")
        if not np.all(np.isfinite(self.to_vector())) or not np.all(np.isfinite(self.lam)):
            raise ValueError("disk state must be finite")

    def constraint_residual(self, r: float) -> float:
        """ |xdot - psidot r u(phi)| """
        return float(np.linalg.norm(self.xdot - self.psidot * r * rolling_direction(self.phi)))

    def to_vector(self) -> np.ndarray:
        """ (theta, phi, psi, x_0, x_1, thetadot, phidot, psidot, xdot_0, xdot_1) """
        return np.concatenate([[self.theta, self.phi, self.psi], self.x,
                               [self.thetadot, self.phidot, self.psidot], self.xdot])

    @staticmethod
    def from_vector(y: np.ndarray, lam: Optional[np.ndarray] = None) -> FullDiskState:
        return FullDiskState(theta=y[0], phi=y[1], psi=y[2], x=y[3:5], thetadot=y[5], phidot=y[6], psidot=y[7],
                             xdot=y[8:10], lam=lam)

    @staticmethod
    def from_reduced(state: DiskState, psi: float = 0.0, x: Optional[np.ndarray] = None) -> FullDiskState:
        return FullDiskState(theta=state.theta, phi=state.phi, psi=psi, x=np.zeros(2) if x is None else x,
                             thetadot=state.thetadot, phidot=state.phidot, psidot=state.eta01, xdot=state.eta12)

    def reduced(self) -> DiskState:
        """ drop the group coordinates (psi, x) """
        return DiskState(theta=self.theta, phi=self.phi, thetadot=self.thetadot, phidot=self.phidot,
                         eta01=self.psidot, eta12=self.xdot)

    def __repr__(self):
        return f"FullDiskState(vector={self.to_vector().tolist()}, lam={self.lam.tolist()})"
