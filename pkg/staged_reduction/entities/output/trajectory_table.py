from __future__ import annotations

import csv
from typing import List

import numpy as np


class TrajectoryTable:
    def __init__(self, header: List[str], rows: np.ndarray) -> None:
        """
        Tabular trajectory output (one row per sample)
        :param header: column names; the first column is the time "t"
        :param rows: array of shape (num_samples, len(header))
        """
        self.header = [str(name) for name in header]
        self.rows = np.array(rows, dtype=float)
        if self.rows.ndim == 1:
            self.rows = self.rows.reshape(-1, len(self.header))
        self._validate()

    def _validate(self) -> None:
        if len(set(self.header)) != len(self.header):
            raise ValueError(f"column names must be unique, got {self.header}")
        if self.rows.shape[1] != len(self.header):
            raise ValueError(f"rows have {self.rows.shape[1]} columns while the header has {len(self.header)}")

    def __len__(self) -> int:
        return self.rows.shape[0]

    def column(self, name: str) -> np.ndarray:
        if name not in self.header:
            raise KeyError(f"no column '{name}' in {self.header}")
        return self.rows[:, self.header.index(name)].copy()

    def columns(self, names: List[str]) -> np.ndarray:
        return np.column_stack([self.column(name) for name in names])

    def to_csv(self, csv_path: str) -> None:
        """ write with a header line and 17 significant digits per value """
        with open(csv_path, "w", newline="") as csv_file:
            writer = csv.writer(csv_file)
            writer.writerow(self.header)
            for row in self.rows:
                writer.writerow([f"{value:.17g}" for value in row])

    @staticmethod
    def from_csv(csv_path: str) -> TrajectoryTable:
        with open(csv_path, "r", newline="") as csv_file:
            reader = csv.reader(csv_file)
            header = [name.strip() for name in next(reader)]
            rows = [[float(value) for value in row] for row in reader if row]
        return TrajectoryTable(header=header, rows=np.array(rows, dtype=float).reshape(-1, len(header)))

    @staticmethod
    def named_columns(prefix: str, count: int) -> List[str]:
        """ prefix_0, ..., prefix_{count-1} """
        return [f"{prefix}_{index}" for index in range(count)]

    def __repr__(self):
        return f"TrajectoryTable(columns={self.header}, samples={len(self)})"
