function formatTime(date) {
  var hours = date.getHours();
  var minutes = date.getMinutes();
  var parts = [hours, minutes];
  return parts.join(":");
}

function padZero(n) {
  if (n < 10) {
    return "0" + n;
  }
  return "" + n;
}

function formatDate(date) {
  var year = date.getFullYear();
  var month = padZero(date.getMonth() + 1);
  var day = padZero(date.getDate());
  return year + "-" + month + "-" + day;
}

module.exports = { formatTime: formatTime, formatDate: formatDate, padZero: padZero };
