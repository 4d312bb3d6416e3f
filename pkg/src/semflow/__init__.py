"""semflow: semantic interoperability toolkit for multimodal mobility data.

The toolkit catalogues heterogeneous data sources with governed metadata,
lifts them to a shared reference vocabulary, fuses and validates the
resulting graphs, lowers them back to consumer formats (JSON/CSV), and
serves everything through one uniform HTTP gateway.
"""

__version__ = "0.1.0"
