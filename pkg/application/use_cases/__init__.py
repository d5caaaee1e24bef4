# application.use_cases
