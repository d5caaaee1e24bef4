# infrastructure.io
