import math
from typing import Sequence

import numpy as np

from se2wavelet.routers.group.group_model import GroupElement


class GroupService:
    """The group law of SE(2): (q', t')(q, t) = (q' + r_t' q, t' + t)"""

    def compose(self, a: GroupElement, b: GroupElement) -> GroupElement:
        c, s = math.cos(a.theta), math.sin(a.theta)
        return GroupElement(
            q1=a.q1 + c * b.q1 - s * b.q2,
            q2=a.q2 + s * b.q1 + c * b.q2,
            theta=a.theta + b.theta,
        )

    def inverse(self, g: GroupElement) -> GroupElement:
        """g^{-1} = (-r_{-t} q, -t)"""
        c, s = math.cos(g.theta), math.sin(g.theta)
        return GroupElement(
            q1=-(c * g.q1 + s * g.q2),
            q2=-(-s * g.q1 + c * g.q2),
            theta=-g.theta,
        )

    def act(self, g: GroupElement, x: Sequence[float]) -> np.ndarray:
        """x -> r_t x + q"""
        c, s = math.cos(g.theta), math.sin(g.theta)
        x1, x2 = float(x[0]), float(x[1])
        return np.array([c * x1 - s * x2 + g.q1, s * x1 + c * x2 + g.q2])


group_service = GroupService()
