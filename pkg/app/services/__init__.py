# Core Services