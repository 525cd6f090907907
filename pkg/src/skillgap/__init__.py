"""skillgap: patent-corpus technology mining, skills mapping, and worker
skill-gap assessment."""

__version__ = "0.1.0"
