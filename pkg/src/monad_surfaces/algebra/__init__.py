"""Exact algebra over small finite fields: fields, linear algebra, E-modules, polynomial ideals."""
