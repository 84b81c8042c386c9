"""Python bindings for the gridhouse simulator."""

from ._core import (
    NUM_PRIMITIVE_ACTIONS,
    OBS_CHANNELS,
    Env,
    EpisodeFinished,
    InvalidAction,
    ProcGenError,
    TaskError,
    primitive_actions,
    replay_demo_text,
    task_names,
)

__all__ = [
    "Env",
    "EpisodeFinished",
    "InvalidAction",
    "NUM_PRIMITIVE_ACTIONS",
    "OBS_CHANNELS",
    "ProcGenError",
    "TaskError",
    "primitive_actions",
    "replay_demo_text",
    "task_names",
]
