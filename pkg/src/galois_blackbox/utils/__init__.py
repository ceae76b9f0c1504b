from .logging import AuditTrail, hash_file, hash_text

__all__ = ["AuditTrail", "hash_file", "hash_text"]
