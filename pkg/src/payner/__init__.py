"""Payment-message named-entity recognition with a feature-engineered linear-chain CRF."""

__version__ = "0.1.0"

from .schema import (  # noqa: E402
    LABELS,
    AnnotatedMessage,
    EntitySpan,
    EntityType,
    MessageFormat,
    PaymentMessage,
    extract_spans,
)

__all__ = [
    "LABELS",
    "AnnotatedMessage",
    "EntitySpan",
    "EntityType",
    "MessageFormat",
    "PaymentMessage",
    "extract_spans",
    "__version__",
]
