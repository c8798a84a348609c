class FormatError(ValueError):
    """A device, helper, hex, image or registry file failed to parse."""


class RegistryError(Exception):
    """Duplicate enrollment or lookup of an unknown device."""
