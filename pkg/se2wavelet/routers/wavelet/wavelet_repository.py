from typing import List

import numpy as np
from pydantic import ValidationError

from se2wavelet.exceptions import FormatError, RepresentationError
from se2wavelet.routers.circle.circle_model import CircleFunction
from se2wavelet.routers.wavelet.wavelet_model import GridSpec, WaveletField, ring_densities_from_provenance
from se2wavelet.utils.binary_format import KIND_FIELD, read_se2f, write_se2f


class WaveletRepository:
    def save(self, path: str, F: WaveletField) -> None:
        """
        Write a rendered field as SE2F kind 2; provenance (u0, Phi) goes into the trailer.
        """
        if F.values is None:
            raise RepresentationError("Only rendered fields can be written; render the field first")
        blocks: List[np.ndarray] = []
        if F.has_provenance:
            blocks = [F.u0.values, F.phi.values]
        write_se2f(path, KIND_FIELD, F.grid.extent, F.values, omega=F.omega, blocks=blocks)

    def load(self, path: str) -> WaveletField:
        """Read a field; ring densities are recomputed from the provenance blocks when present"""
        payload = read_se2f(path)
        if payload.kind != KIND_FIELD:
            raise FormatError(f"{path}: expected a field payload (kind {KIND_FIELD}), got kind {payload.kind}")
        if len(payload.blocks) not in (0, 2):
            raise FormatError(f"{path}: expected 0 or 2 provenance blocks, got {len(payload.blocks)}")
        try:
            grid = GridSpec(m=payload.m, extent=payload.extent, n_theta=payload.n_theta)
            if not payload.blocks:
                return WaveletField(omega=payload.omega, grid=grid, values=payload.values)
            u0 = CircleFunction(values=payload.blocks[0])
            phi = CircleFunction(values=payload.blocks[1])
            densities = ring_densities_from_provenance(u0, phi, grid.n_theta)
            return WaveletField(omega=payload.omega, grid=grid, values=payload.values,
                                ring_densities=densities, u0=u0, phi=phi)
        except ValidationError as e:
            raise FormatError(f"{path}: {e.errors()[0]['msg']}")
