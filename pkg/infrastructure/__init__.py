# infrastructure
