# application.services
