"""Conditional sequence models: n-gram reference backend and beam decoding."""

from .beam import Candidate, beam_decode
from .kernels import KERNEL_BACKEND
from .ngram import (
    MODEL_FORMAT_VERSION,
    ModelError,
    ModelFormatError,
    ModelRole,
    NgramConfig,
    NgramModel,
    ROLE_OF_ORIGIN,
    SequenceModel,
    deserialize,
    fit,
    load_model,
    next_token_distribution,
    save_model,
    serialize,
)
from .vocab import EOS_TOKEN, SEP_TOKEN, UNK_TOKEN, Vocabulary

__all__ = [
    "Candidate",
    "EOS_TOKEN",
    "KERNEL_BACKEND",
    "MODEL_FORMAT_VERSION",
    "ModelError",
    "ModelFormatError",
    "ModelRole",
    "NgramConfig",
    "NgramModel",
    "ROLE_OF_ORIGIN",
    "SEP_TOKEN",
    "SequenceModel",
    "UNK_TOKEN",
    "Vocabulary",
    "beam_decode",
    "deserialize",
    "fit",
    "load_model",
    "next_token_distribution",
    "save_model",
    "serialize",
]
