import json
from typing import Any, Dict, List

import numpy as np
from pydantic import BaseModel


def list_serial(data: List[BaseModel]) -> List[Dict[str, Any]]:
    """
    Convert a list of models to plain dicts ready for JSON
    """
    return [individual_serial(item) for item in data]


def individual_serial(data: BaseModel) -> Dict[str, Any]:
    """
    Convert a single model to a plain dict, keeping field order
    """
    return json.loads(json.dumps(data.dict(), cls=JSONEncoder))


class JSONEncoder(json.JSONEncoder):
    """
    JSON encoder that handles numpy scalars/arrays and complex numbers
    """
    def default(self, o: Any) -> Any:
        if isinstance(o, np.bool_):
            return bool(o)
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, (complex, np.complexfloating)):
            return {"re": float(o.real), "im": float(o.imag)}
        if isinstance(o, np.ndarray):
            return o.tolist()
        return super().default(o)


def dumps(data: Any) -> str:
    """Deterministic JSON text (fixed indentation, trailing newline)"""
    return json.dumps(data, cls=JSONEncoder, indent=2, ensure_ascii=False) + "\n"
