"""Exception types shared across the package."""


class KeywalkError(Exception):
    """Base class for all package errors."""


class CorpusError(KeywalkError):
    """A corpus directory or document file is malformed or unreadable."""


class ConfigError(KeywalkError):
    """An invalid configuration value (bad window, folds > documents, ...)."""


class GraphLookupError(KeywalkError):
    """A vertex id is out of range for the graph."""


class VocabularyError(KeywalkError):
    """A word is not present in the embedding vocabulary."""


class TrainingError(KeywalkError):
    """Classifier training cannot proceed (e.g. a class has no examples)."""


class ModelFormatError(KeywalkError):
    """A serialized model file is missing, corrupt, or incompatible."""


class EvaluationError(KeywalkError):
    """A document cannot be scored (e.g. empty gold set)."""
