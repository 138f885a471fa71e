"""JSON Schemas shipped with twisted_kernel."""
