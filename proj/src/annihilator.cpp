namespace hsph {}
