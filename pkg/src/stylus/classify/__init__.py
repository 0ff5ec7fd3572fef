"""Binary authorship classifiers: penalized logistic and probit forest."""

from .bart import BartModel, bart_draw_matrix, bart_fit, bart_predict
from .lasso import LassoModel, lasso_fit, lasso_predict, write_lasso_json
from .predictions import Prediction, write_predictions_csv

__all__ = [
    "BartModel",
    "LassoModel",
    "Prediction",
    "bart_draw_matrix",
    "bart_fit",
    "bart_predict",
    "lasso_fit",
    "lasso_predict",
    "write_lasso_json",
    "write_predictions_csv",
]
