"""Schubert codes over finite fields: construction, exhaustive parameters and checks."""
