from .files import read_document, read_oracle_table, write_document, write_oracle_table

__all__ = ["read_document", "read_oracle_table", "write_document", "write_oracle_table"]
