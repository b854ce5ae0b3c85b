"""The test game: predecessors, rank hierarchy and strategies."""

from .hierarchy import RankMap, build_hierarchy, rank
from .preds import control_loss, pi, pred_discrete, pred_final, pred_timed
from .strategy import PLAY, WAIT, WAIT_MAX, Move, Strategy, Unsatisfiable, synthesize
from .view import GameView

__all__ = [
    "PLAY", "WAIT", "WAIT_MAX", "GameView", "Move", "RankMap", "Strategy",
    "Unsatisfiable", "build_hierarchy", "control_loss", "pi", "pred_discrete",
    "pred_final", "pred_timed", "rank", "synthesize",
]
