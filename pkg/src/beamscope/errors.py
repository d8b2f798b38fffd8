"""Exception hierarchy shared across the package."""


class BeamscopeError(Exception):
    """Base class for all package errors."""


class ConfigError(BeamscopeError):
    """Invalid provider or service configuration."""


class VocabularyError(BeamscopeError):
    """Input text contains symbols outside the provider vocabulary."""


class ProviderTransportError(BeamscopeError):
    """Transport-level failure talking to a remote provider (retriable)."""


class ProviderProtocolError(BeamscopeError):
    """Remote provider returned a malformed or invalid response."""


class ModelError(BeamscopeError):
    """Provider produced an invalid distribution (e.g. empty vocabulary row)."""


class EmbeddingsUnsupported(BeamscopeError):
    """Provider does not advertise the embedding capability."""


class UnknownNodeError(BeamscopeError):
    """Referenced node id does not exist in the tree."""


class InvalidTargetError(BeamscopeError):
    """Node cannot be used as an expansion target (e.g. completed with EOS)."""


class SchemaVersionError(BeamscopeError):
    """Document carries an unsupported schema version."""


class DocumentParseError(BeamscopeError):
    """Document is structurally malformed; message carries the location."""


class ContractError(BeamscopeError):
    """A caller violated an operation precondition (e.g. empty wordlist)."""
