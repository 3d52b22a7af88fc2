from pydantic import ValidationError

from se2wavelet.exceptions import FormatError
from se2wavelet.routers.circle.circle_model import CircleFunction
from se2wavelet.utils.csv_processor import read_circle_csv, write_circle_csv


class CircleRepository:
    def save(self, path: str, u: CircleFunction) -> None:
        """Write a circle function as phi,re,im CSV"""
        write_circle_csv(path, u.values)

    def load(self, path: str) -> CircleFunction:
        """Read a circle function from phi,re,im CSV"""
        values = read_circle_csv(path)
        try:
            return CircleFunction(values=values)
        except ValidationError as e:
            raise FormatError(f"{path}: {e.errors()[0]['msg']}")
