# Tests for cv_storage
