"""
Dataset Repository interface.

This module contains the DatasetRepository interface which defines the
contract for reading labeled feature data in the domain layer.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from ..entities.labeled_dataset import LabeledDataset
from ..value_objects.enums import Label


class DatasetRepository(ABC):
    """
    Dataset Repository interface.

    Defines the contract for loading feature datasets. This interface belongs
    to the domain layer and is implemented by the infrastructure layer.
    """

    @abstractmethod
    def load_csv(
        self,
        path: Path,
        device_type: int,
        label: Optional[Label] = None,
        label_column: Optional[str] = None,
        feature_columns: Optional[Tuple[str, ...]] = None,
    ) -> Tuple[LabeledDataset, int]:
        """
        Load one feature CSV.

        Args:
            path: CSV file with a header row
            device_type: Device type id of every row
            label: Label of every row, when the file has a single label
            label_column: Column holding per-row labels, when ``label`` is None
            feature_columns: Columns to use, all numeric columns when None

        Returns:
            The dataset of usable rows and the number of rejected rows

        Raises:
            ArtifactNotFoundError: If the file does not exist
            InputDataError: If the file cannot be parsed or has no usable rows
        """
        pass

    @abstractmethod
    def load_manifest(
        self,
        path: Path,
        subsample_fraction: float = 1.0,
        seed: int = 0,
    ) -> LabeledDataset:
        """
        Load every file listed in a dataset manifest.

        Args:
            path: Manifest file
            subsample_fraction: Fraction of rows kept per file
            seed: Seed of the subsampling

        Returns:
            The concatenated dataset

        Raises:
            ArtifactNotFoundError: If the manifest or a listed file is missing
            InputDataError: If a file cannot be used
        """
        pass

    @abstractmethod
    def read_features(self, path: Path, n_features: int) -> np.ndarray:
        """
        Read an unlabeled feature matrix for scoring.

        Args:
            path: CSV file with a header row
            n_features: Expected number of feature columns

        Returns:
            Matrix of shape (rows, n_features); a header-only file gives zero rows

        Raises:
            ArtifactNotFoundError: If the file does not exist
            InputDataError: If the column count or values are invalid
        """
        pass
