"""quantcast: next-day price forecasting toolkit with walk-forward backtesting.

Implements ARIMA and ARIMA-GARCH estimation from first principles,
from-scratch MLP and LSTM forecasters, stationarity diagnostics, and the
expanding/rolling walk-forward evaluation harness around them.
"""

__version__ = "0.1.0"
